"""
Permutation schemes for replaying a block's proposals.

Permutations are 1-based: row k lists the proposal labels chain k visits,
in order.
"""
from __future__ import annotations
from typing import Optional

import numpy as np

from src.domain.permutations import PermutationScheme, PermutationSet


def _check_size(p: int, r: int) -> None:
    if p < 1:
        raise ValueError("Block size p must be at least 1")
    if r < 1:
        raise ValueError("Number of permutations r must be at least 1")


def same_order(p: int, r: int) -> PermutationSet:
    _check_size(p, r)
    perms = np.tile(np.arange(1, p + 1), (r, 1))
    return PermutationSet(perms=perms, scheme=PermutationScheme.SAME_ORDER)


def circular(p: int, r: Optional[int] = None) -> PermutationSet:
    """sigma_i(j) = i + j - 1, wrapping after p; rows i = 1..r (shift taken mod p)."""
    r = p if r is None else r
    _check_size(p, r)
    shifts = np.arange(r)[:, None] % p
    perms = (shifts + np.arange(p)[None, :]) % p + 1
    return PermutationSet(perms=perms, scheme=PermutationScheme.CIRCULAR)


def random_perms(p: int, r: int, rng: np.random.Generator) -> PermutationSet:
    """r independent uniform shuffles, drawn with replacement."""
    _check_size(p, r)
    perms = np.stack([rng.permutation(p) + 1 for _ in range(r)])
    return PermutationSet(perms=perms, scheme=PermutationScheme.RANDOM)


def half_random_half_reversed(p: int, rng: np.random.Generator, r: Optional[int] = None) -> PermutationSet:
    """r/2 random shuffles followed by their reversals: sigma_{k+r/2}(j) = sigma_k(p+1-j)."""
    r = p if r is None else r
    _check_size(p, r)
    if r % 2 != 0:
        raise ValueError("Half-random-half-reversed scheme needs an even number of permutations")
    head = np.stack([rng.permutation(p) + 1 for _ in range(r // 2)])
    perms = np.concatenate([head, head[:, ::-1]])
    return PermutationSet(perms=perms, scheme=PermutationScheme.HALF_RANDOM_HALF_REVERSED)


def stratified(p: int, rng: np.random.Generator, r: Optional[int] = None) -> PermutationSet:
    """Row k starts with ((k-1) mod p) + 1; the remaining positions are a uniform shuffle."""
    r = p if r is None else r
    _check_size(p, r)
    perms = np.empty((r, p), dtype=np.int64)
    labels = np.arange(1, p + 1)
    for k in range(r):
        first = k % p + 1
        rest = labels[labels != first]
        perms[k, 0] = first
        perms[k, 1:] = rng.permutation(rest)
    return PermutationSet(perms=perms, scheme=PermutationScheme.STRATIFIED)


def generate_permutations(
    scheme: PermutationScheme,
    p: int,
    r: int,
    rng: Optional[np.random.Generator] = None,
) -> PermutationSet:
    """Dispatch by scheme; random-family schemes need `rng`."""
    if scheme.uses_rng and rng is None:
        raise ValueError(f"Scheme '{scheme.value}' needs a random generator")
    if scheme is PermutationScheme.SAME_ORDER:
        return same_order(p, r)
    if scheme is PermutationScheme.CIRCULAR:
        return circular(p, r)
    if scheme is PermutationScheme.RANDOM:
        return random_perms(p, r, rng)
    if scheme is PermutationScheme.HALF_RANDOM_HALF_REVERSED:
        return half_random_half_reversed(p, rng, r)
    return stratified(p, rng, r)
