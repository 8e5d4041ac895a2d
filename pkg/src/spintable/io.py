"""Canonical JSON interchange for strategies, verdicts, and certificates.

Serialization is byte-stable: fixed key order, compact separators, a single
trailing newline.  Strategy files may omit the identity from the generator
list; it is re-added on load because the game requires it.
"""

import json
from typing import Optional

from .game import GameSpec, Strategy
from .linalg import ModVector
from .perm import GeneratorSet, Permutation, generator_set
from .refute import UnsolvabilityCertificate
from .verify import Verdict, Witness

_SEPARATORS = (",", ":")


def _dumps(obj) -> str:
    return json.dumps(obj, separators=_SEPARATORS) + "\n"


def dump_strategy(strategy: Strategy) -> str:
    spec = strategy.spec
    doc = {
        "n": spec.n,
        "m": spec.m,
        "generators": [list(g.mapping) for g in spec.S.perms],
        "moves": [list(y.entries) for y in strategy.moves],
    }
    if strategy.metadata is not None:
        doc["metadata"] = strategy.metadata
    return _dumps(doc)


def _require(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


def load_strategy(text: str) -> Strategy:
    doc = json.loads(text)
    _require(isinstance(doc, dict), "strategy document must be an object")
    for key in ("n", "m", "generators", "moves"):
        _require(key in doc, f"strategy document missing {key!r}")
    n, m = doc["n"], doc["m"]
    _require(isinstance(n, int) and n >= 1, "n must be a positive integer")
    _require(isinstance(m, int) and m >= 1, "m must be a positive integer")
    gens = doc["generators"]
    _require(isinstance(gens, list) and gens, "generators must be a nonempty array")
    S = generator_set(n, gens).with_identity()
    spec = GameSpec(n, m, S)
    moves = tuple(ModVector(m, tuple(y)) for y in doc["moves"])
    return Strategy(spec, moves, metadata=doc.get("metadata"))


def dump_verdict(verdict: Verdict) -> str:
    witness = None
    if verdict.witness is not None:
        witness = {
            "start": list(verdict.witness.start.entries),
            "perms": list(verdict.witness.perms),
        }
    return _dumps(
        {"wins": verdict.wins, "steps_checked": verdict.steps_checked, "witness": witness}
    )


def load_verdict(text: str, m: Optional[int] = None) -> Verdict:
    """Parse a verdict document; m is required only to decode a witness."""
    doc = json.loads(text)
    witness: Optional[Witness] = None
    raw = doc.get("witness")
    if raw is not None:
        _require(m is not None, "decoding a witness requires the game modulus")
        witness = Witness(
            start=ModVector(m, tuple(raw["start"])), perms=tuple(raw["perms"])
        )
    return Verdict(wins=doc["wins"], steps_checked=doc["steps_checked"], witness=witness)


def dump_certificate(cert: UnsolvabilityCertificate) -> str:
    return _dumps(
        {
            "p": cert.p,
            "q": cert.q,
            "c": list(cert.c.mapping),
            "blocks": [list(b) for b in cert.blocks],
        }
    )


def load_certificate(text: str) -> UnsolvabilityCertificate:
    doc = json.loads(text)
    for key in ("p", "q", "c", "blocks"):
        _require(key in doc, f"certificate document missing {key!r}")
    return UnsolvabilityCertificate(
        p=doc["p"],
        q=doc["q"],
        c=Permutation(tuple(doc["c"])),
        blocks=tuple(tuple(b) for b in doc["blocks"]),
    )


def generators_from_json(n: int, text: str) -> GeneratorSet:
    """Parse an inline JSON array of permutation arrays (identity implied)."""
    doc = json.loads(text)
    _require(isinstance(doc, list) and doc, "expected a nonempty JSON array of permutations")
    return generator_set(n, doc).with_identity()
