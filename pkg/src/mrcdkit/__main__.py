import sys

from mrcdkit.cli import main
from mrcdkit.core.mrcd_logger import shutdown_logger


if __name__ == "__main__":
    try:
        exit_code = main()
    finally:
        shutdown_logger()
    sys.exit(exit_code)
