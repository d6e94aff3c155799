"""Kernel backend selection.

The compiled Cython backend is used when present; set SHADOWFIT_PURE=1 to
force the pure numpy reference implementation.  Both expose the same
functions and agree to within a few ulps.
"""

import os

from . import _ref

if os.environ.get("SHADOWFIT_PURE") == "1":
    _impl = _ref
else:
    try:
        from . import _fast as _impl
    except ImportError:
        _impl = _ref

BACKEND = _impl.BACKEND

cone_section_radial = _impl.cone_section_radial
cylinder_section_radial = _impl.cylinder_section_radial
cylinder_radial = _impl.cylinder_radial
double_cone_radial = _impl.double_cone_radial
cylinder_support = _impl.cylinder_support
double_cone_support = _impl.double_cone_support
cap_profile = _impl.cap_profile
bump_sum = _impl.bump_sum
ring_sum = _impl.ring_sum
