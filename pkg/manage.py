#!/usr/bin/env python
"""Command-line utility for the slope-function calculus library."""
import sys


def main():
    """Run one command."""
    try:
        from core.cli import run
    except ImportError as exc:
        raise ImportError(
            "Couldn't import the core library. Are its dependencies installed "
            "and is the project root on your PYTHONPATH? Did you forget to "
            "activate a virtual environment?"
        ) from exc
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
