"""
Entry Point for the Turbofan Cycle Toolkit
"""

import logging
import sys

from app.config import settings
from app.api import cli

# Configure logging; stdout is reserved for reports
logging.basicConfig(
    level=getattr(logging, settings.LOG_LEVEL),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)


def main(argv=None) -> int:
    """Run one command and return its exit status"""
    return cli.run(argv)


if __name__ == "__main__":
    sys.exit(main())
