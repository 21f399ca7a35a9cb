"""Python access to the tilejep core.

Structures are ``MultiPerm`` objects; problems, tilings, verdicts and ledgers
are plain dicts in the same layout as the CLI's JSON files.
"""

import json

from . import _core
from ._core import ClassDescriptor, MultiPerm, TilejepError, find_embedding, count_copies, induced_substructure

__all__ = [
    "ClassDescriptor",
    "MultiPerm",
    "TilejepError",
    "compile_class",
    "load_class",
    "check",
    "explain",
    "canonical",
    "jep",
    "jep_brute",
    "extract_tiling",
    "check_tiling",
    "solve_periodic",
    "encode_wang",
    "find_embedding",
    "count_copies",
    "induced_substructure",
    "gadget_shapes",
    "forbidden_patterns",
    "render_svg",
]

gadget_shapes = _core.gadget_shapes
forbidden_patterns = _core.forbidden_patterns
render_svg = _core.render_svg
jep_brute = _core.jep_brute


def compile_class(problem, variant="P", gadget_size=7, seed=0):
    return _core.compile_class(json.dumps(problem), variant, gadget_size, seed)


def load_class(doc):
    return ClassDescriptor.from_json(json.dumps(doc))


def check(structure, cls, only=()):
    return json.loads(_core.check(structure, cls, list(only)))


def explain(structure, cls):
    return json.loads(_core.explain(structure, cls))


def canonical(cls, model, n, defect=False):
    structure, ledger = _core.canonical(cls, model, n, defect)
    return structure, json.loads(ledger)


def jep(a, b, tiling, cls):
    return _core.jep(a, b, json.dumps(tiling), cls)


def extract_tiling(joint, cls, width, height, pairing=(0, 1)):
    return json.loads(_core.extract_tiling(joint, cls, width, height, pairing[0], pairing[1]))


def check_tiling(problem, tiling):
    return json.loads(_core.check_tiling(json.dumps(problem), json.dumps(tiling)))


def solve_periodic(problem, max_period=4):
    out = _core.solve_periodic(json.dumps(problem), max_period)
    return None if out is None else json.loads(out)


def encode_wang(wang):
    problem, codec = _core.encode_wang(json.dumps(wang))
    return json.loads(problem), json.loads(codec)
