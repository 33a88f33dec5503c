import sys

from syzygy.main import main

sys.exit(main())
