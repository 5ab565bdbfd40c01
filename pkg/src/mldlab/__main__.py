import sys

from mldlab.cli import main

sys.exit(main())
