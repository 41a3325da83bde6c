""" Command-line entry point

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""

from edp_limits.cli import main

if __name__ == '__main__':
    main()
