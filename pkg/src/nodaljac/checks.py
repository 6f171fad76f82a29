"""Switch for expensive input validation inside the group laws.

Off by default so timings match the bare algorithms; the test suite turns it
on. Set ``NODALJAC_DEBUG=1`` to enable it from the environment.
"""

import os

ENABLED = os.environ.get("NODALJAC_DEBUG", "") not in ("", "0")
