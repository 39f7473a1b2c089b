from starwalk.cli import main
import sys

sys.exit(main())
