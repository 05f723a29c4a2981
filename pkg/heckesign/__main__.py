import sys

from heckesign.cli.main import main

sys.exit(main())
