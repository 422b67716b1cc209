# CLI command modules
