"""
Run reranking experiments from the command line
Subcommands: gen, run, compare, audit, bounds, eta, scan
"""

import sys
from cli.main import main


if __name__ == "__main__":
    sys.exit(main())
