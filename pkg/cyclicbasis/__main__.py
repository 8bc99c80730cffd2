"""Application Entry"""

import sys

from .cli import main

sys.exit(main())
