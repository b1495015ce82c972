class ConfigError(Exception):
    """A configuration that cannot produce a valid run (bad parameter
    ranges, unstable step sizes, incompatible env/agent pairings)."""
