"""Motive files: TOML with a `field` section and a `motive` section.

    [field]
    p = 2
    e = 1
    # for e > 1: modulus = [c0, c1, ..., 1]  (monic, constant term first)

    [motive]
    rank = 2
    matrix = ["th+1", "t*th+th", "t+1", "t^2+th"]   # row-major, grammar strings
    h = 0          # optional: matrix represents (t-theta)^h * tau
    name = "example"   # optional

Unknown keys are rejected.
"""

from __future__ import annotations

import tomli

from .ffield import Field
from .grammar import parse_bivar
from .motive import Motive, from_matrix


class MotiveFileError(ValueError):
    pass


_FIELD_KEYS = {"p", "e", "modulus"}
_MOTIVE_KEYS = {"rank", "matrix", "h", "name"}


def parse_motive_text(text: str) -> Motive:
    try:
        data = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise MotiveFileError(f"not valid TOML: {exc}") from exc
    extra = set(data) - {"field", "motive"}
    if extra:
        raise MotiveFileError(f"unknown sections: {sorted(extra)}")
    if "field" not in data or "motive" not in data:
        raise MotiveFileError("need both [field] and [motive] sections")
    fsec, msec = data["field"], data["motive"]
    for sec, keys, name in ((fsec, _FIELD_KEYS, "field"), (msec, _MOTIVE_KEYS, "motive")):
        extra = set(sec) - keys
        if extra:
            raise MotiveFileError(f"unknown keys in [{name}]: {sorted(extra)}")
    if "p" not in fsec:
        raise MotiveFileError("[field] needs p")
    p = fsec["p"]
    e = fsec.get("e", 1)
    modulus = fsec.get("modulus")
    if e > 1 and modulus is None:
        raise MotiveFileError("[field] with e > 1 needs an explicit modulus")
    try:
        ff = Field(p, e, modulus)
    except ValueError as exc:
        raise MotiveFileError(str(exc)) from exc
    if "rank" not in msec or "matrix" not in msec:
        raise MotiveFileError("[motive] needs rank and matrix")
    rank = msec["rank"]
    if not isinstance(rank, int) or rank < 0:
        raise MotiveFileError("rank must be a nonnegative integer")
    flat = msec["matrix"]
    if not isinstance(flat, list) or len(flat) != rank * rank:
        raise MotiveFileError(f"matrix must list rank^2 = {rank * rank} entries row-major")
    h = msec.get("h", 0)
    if not isinstance(h, int):
        raise MotiveFileError("h must be an integer")
    name = msec.get("name")
    if rank == 0:
        return from_matrix([], h=h, ff=ff, name=name)
    try:
        entries = [
            [parse_bivar(ff, flat[i * rank + j]) for j in range(rank)]
            for i in range(rank)
        ]
        return from_matrix(entries, h=h, ff=ff, name=name)
    except ValueError as exc:
        raise MotiveFileError(f"bad motive matrix: {exc}") from exc


def load_motive(path) -> Motive:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_motive_text(fh.read())


def dump_motive(M: Motive) -> str:
    """Round-trippable TOML text for a motive."""
    lines = ["[field]", f"p = {M.ff.p}"]
    if M.ff.e > 1:
        lines.append(f"e = {M.ff.e}")
        lines.append(f"modulus = {list(M.ff.modulus)}")
    lines += ["", "[motive]", f"rank = {M.rank}"]
    flat = [f'"{e.to_str()}"' for row in M.phi for e in row]
    lines.append("matrix = [" + ", ".join(flat) + "]")
    lines.append(f"h = {M.h}")
    if M.name:
        lines.append(f'name = "{M.name}"')
    return "\n".join(lines) + "\n"
