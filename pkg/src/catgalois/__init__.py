"""Categorical Galois theory on finite algebras: reflectors, homological
closure, relative commutators, Galois groups of extensions and Hopf-type
formulae, checked exhaustively over small corpora."""

from .closure import close, close_zero
from .cohom import h2_mod, schur_multiplier
from .errors import *  # noqa: F401,F403
from .fgab import FgAb, parse_fgab, smith_normal_form
from .finalg import load_algebra, load_morphism, make_algebra, quotient
from .galois import classify, galois_group, relative_commutator
from .hopf import hopf_identity_check, hopf_rhs, pi1_fgab
from .kernels import BACKEND_NAME
from .reflect import REGISTRY, compose, get_reflector

__version__ = "0.1.0"
