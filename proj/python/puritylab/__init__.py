"""Purity checks for short exact sequences of finite Z/N-modules.

The JSON-producing entry points of the extension module are wrapped here to
return parsed dictionaries; the raw functions stay available in ``_core``.
"""

import json

from . import _core
from ._core import (
    CHECKERS,
    DocumentError,
    InputError,
    __version__,
    eval_pp,
    example_names,
    hom_invariants,
    normalize,
    pp_catalog,
    smith_normal_form,
    tensor_invariants,
)

__all__ = [
    "CHECKERS",
    "DocumentError",
    "InputError",
    "__version__",
    "check_document",
    "check_sequence",
    "eval_pp",
    "example",
    "example_names",
    "hom_invariants",
    "lemma_suites",
    "normalize",
    "pp_catalog",
    "random_harness",
    "smith_normal_form",
    "tensor_invariants",
]


def check_sequence(modulus, L, M, N_mod, f, g, **bounds):
    """Report for 0 -> L -> M -> N -> 0; matrices are lists of rows."""
    return json.loads(_core.check_sequence(modulus, L, M, N_mod, f, g, **bounds))


def check_document(doc, **bounds):
    """Report for a sequence document given as a dict or JSON text."""
    text = doc if isinstance(doc, str) else json.dumps(doc)
    return json.loads(_core.check_document(text, **bounds))


def example(name):
    """A bundled sequence document as a dict."""
    return json.loads(_core.example(name))


def random_harness(modulus, trials, seed=0, **options):
    """Summary of the checker comparison on seeded random sequences."""
    return json.loads(_core.random_harness(modulus, trials, seed, **options))


def lemma_suites(modulus, trials, seed=0):
    """Results of the functor-category isomorphism suites."""
    return json.loads(_core.lemma_suites(modulus, trials, seed))
