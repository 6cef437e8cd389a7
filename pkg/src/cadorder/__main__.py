"""
Entry point for running cadorder as a module: python -m cadorder
"""

from cadorder.app import main

if __name__ == "__main__":
    main()
