import sys

_verbosity = 0


def set_verbosity(level: int):
    global _verbosity
    _verbosity = level


def log(*args):
    """Progress messages, only shown with --verbose"""
    if _verbosity > 0:
        print(*args, file=sys.stderr)


def warn(*args):
    print("warning:", *args, file=sys.stderr)
