# CLI request schemas for flag validation
