# main.py
# -*- coding: utf-8 -*-
import logging
import sys

from monoid_shift.cli import main as run_cli

def main():
    logging.basicConfig(
        level=logging.WARNING,
        format='%(asctime)s - %(levelname)s - %(message)s',
        stream=sys.stderr
    )
    sys.exit(run_cli())

if __name__ == "__main__":
    main()
