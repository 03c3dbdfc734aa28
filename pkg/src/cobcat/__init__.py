"""cobcat: exact-arithmetic computational category theory and cobordisms.

Subpackages cover finite categories and their nerves, groupoid
localizations, one- and two-dimensional cobordism invariants, Picard
groupoid data, and Frobenius-pairing field theories.  Everything computes
over exact integers and rationals.
"""

from __future__ import annotations

__version__ = "0.1.0"
