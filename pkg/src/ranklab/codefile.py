"""Versioned textual serialization for code objects.

Line 1 is a header of whitespace-separated tokens:

    rankcode/1 field=<descriptor> n=<n> kind=<explicit|linear|gabidulin> ...

with ``size=<M>`` for explicit codes and ``k=<k>`` for the linear kinds.
Each following line is one vector of F_{q^m}^n: extension-element
coordinate blocks joined by commas, the coordinates inside a block
(little-endian F_q codes, m per block) joined by colons.  For
kind=explicit the body lists every codeword; for kind=linear it lists
the k basis codewords; for kind=gabidulin it is a single line holding
the evaluation-point vector, which is itself the codeword of the first
unit message.  All validation (distinctness, independence, coordinate
ranges) reruns on load.
"""
from __future__ import annotations

import io
from typing import TextIO

from .codes import Code, ExplicitCode, GabidulinCode, LinearCode
from .fields import ExtCtx, context_from_descriptor
from .rankmetric import RankVector

MAGIC = "rankcode/1"


def _format_vector(ctx: ExtCtx, entries) -> str:
    blocks = (":".join(str(c) for c in ctx.ext_to_vec(e)) for e in entries)
    return ",".join(blocks)


def _parse_vector(ctx: ExtCtx, n: int, line: str, lineno: int) -> RankVector:
    blocks = line.split(",")
    if len(blocks) != n:
        raise ValueError(f"line {lineno}: expected {n} coordinate blocks, got {len(blocks)}")
    entries = []
    for block in blocks:
        try:
            coords = tuple(int(c) for c in block.split(":"))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: bad coordinate block {block!r}") from exc
        entries.append(ctx.vec_to_ext(coords))
    return RankVector(ctx, tuple(entries))


def dump_code(code: Code, stream: TextIO) -> None:
    if not isinstance(code, (ExplicitCode, LinearCode, GabidulinCode)):
        raise TypeError(f"not a code object: {code!r}")
    ctx = code.ctx
    header = [MAGIC, f"field={ctx.descriptor()}", f"n={code.n}"]
    if isinstance(code, ExplicitCode):
        header += ["kind=explicit", f"size={code.size}"]
        body = [_format_vector(ctx, w.entries) for w in code.words]
    elif isinstance(code, LinearCode):
        header += ["kind=linear", f"k={code.k}"]
        body = [_format_vector(ctx, w.entries) for w in code.basis]
    else:
        header += ["kind=gabidulin", f"k={code.k}"]
        body = [_format_vector(ctx, code.points)]
    stream.write(" ".join(header) + "\n")
    for line in body:
        stream.write(line + "\n")


def dumps_code(code: Code) -> str:
    buf = io.StringIO()
    dump_code(code, buf)
    return buf.getvalue()


def load_code(stream: TextIO) -> Code:
    lines = [ln.rstrip("\n") for ln in stream if ln.strip()]
    if not lines:
        raise ValueError("empty code file")
    tokens = lines[0].split()
    if not tokens or tokens[0] != MAGIC:
        raise ValueError(f"not a {MAGIC} file (header {lines[0]!r})")
    fields = {}
    for tok in tokens[1:]:
        if "=" not in tok:
            raise ValueError(f"malformed header token {tok!r}")
        key, value = tok.split("=", 1)
        fields[key] = value
    for key in ("field", "n", "kind"):
        if key not in fields:
            raise ValueError(f"header is missing {key}=")
    ctx = context_from_descriptor(fields["field"])
    n = int(fields["n"])
    kind = fields["kind"]
    body = lines[1:]
    vectors = [_parse_vector(ctx, n, ln, i + 2) for i, ln in enumerate(body)]
    if kind == "explicit":
        if "size" in fields and int(fields["size"]) != len(vectors):
            raise ValueError(
                f"header says size={fields['size']} but found {len(vectors)} codewords"
            )
        return ExplicitCode(ctx, n, tuple(vectors))
    if kind == "linear":
        k = int(fields.get("k", len(vectors)))
        if k != len(vectors):
            raise ValueError(f"header says k={k} but found {len(vectors)} basis words")
        return LinearCode(ctx, n, tuple(vectors))
    if kind == "gabidulin":
        if "k" not in fields:
            raise ValueError("gabidulin header needs k=")
        if len(vectors) != 1:
            raise ValueError("gabidulin body must be the single evaluation-point line")
        return GabidulinCode(ctx, n, int(fields["k"]), vectors[0].entries)
    raise ValueError(f"unknown code kind {kind!r}")


def loads_code(text: str) -> Code:
    return load_code(io.StringIO(text))
