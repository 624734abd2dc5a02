# main.py - Extremal Zeros entry point
"""
Run the command-line interface:

    python main.py bounds jacobi -n 4 -a 0 -b 0 --oracle
    python main.py verify --grid smoke
"""

import sys

from cli import main

if __name__ == "__main__":
    sys.exit(main())
