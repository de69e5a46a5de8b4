"""
biobp - Credit-Assignment Lab
Main entry point for the command line.
"""
import sys

from dotenv import load_dotenv

from src.cli.main import main


if __name__ == "__main__":
    # BIOBP_* variables may come from a .env file in the working directory
    load_dotenv()
    sys.exit(main())
