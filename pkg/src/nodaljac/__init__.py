"""Arithmetic in the generalized Jacobian of nodal curves y^2 = x*f(x)^2.

Elements are single polynomials ``h`` with ``deg h < deg f``; see
:mod:`nodaljac.nodal`. Cantor's algorithm on Mumford pairs lives in
:mod:`nodaljac.mumford`, the public-key scheme built on the group in
:mod:`nodaljac.pke`, and a textbook RSA baseline in :mod:`nodaljac.rsa`.
"""

from .arith import FactorFound

__version__ = "0.1.0"

__all__ = ["FactorFound", "__version__"]
