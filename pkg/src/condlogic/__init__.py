"""Workbench for intuitionistic conditional logic over finite frames.

The library is organised around a handful of small value types: formulas
(three tagged object languages), finite preorders with upsets encoded as
int bitmasks, conditional and general frames, and finite conditional
Heyting algebras.  On top of those sit model checking, fill-in
constructions, an axiom catalog with frame correspondents, finite duality
round-trips, countermodel search and two syntactic translations.  The
``clc`` command line front end binds everything together.
"""

__version__ = "0.1.0"

from .syntax import Language, Formula, parse, print_formula, substitute, proposition_letters

__all__ = [
    "Language",
    "Formula",
    "parse",
    "print_formula",
    "substitute",
    "proposition_letters",
    "__version__",
]
