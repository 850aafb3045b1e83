"""Entry point for the propa CLI."""

from propa.cli import main

if __name__ == "__main__":
    main()
