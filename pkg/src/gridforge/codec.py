"""Dowker-Thistlethwaite codes: parsing, pairing, canonical form.

Passages along the knot are numbered 1..2c; edge ``k`` runs from passage
``k`` to passage ``k + 1`` (mod 2c).  Entry ``k`` of a code is the even
partner of odd passage ``2k - 1``.

Sign convention: an unsigned (positive) entry means the even passage is the
over-strand at that crossing; a negative entry means it goes under.  An
alternating diagram therefore has uniformly signed entries, and uniform
signs are normalized to positive.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Iterator, Sequence

if TYPE_CHECKING:
    from gridforge.diagram import PlanarDiagram

__all__ = [
    "DTCode",
    "DTCodeError",
    "parse_dt",
    "render_dt",
    "read_table",
    "dt_pairing",
    "gauss_sequence",
    "canonicalize",
    "extract_dt",
]


class DTCodeError(ValueError):
    """Raised for malformed or invalid DT codes."""


@dataclass(frozen=True)
class DTCode:
    entries: tuple[int, ...]
    name: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))
        _validate(self.entries)

    @property
    def crossings(self) -> int:
        return len(self.entries)

    @property
    def is_alternating(self) -> bool:
        return all(e > 0 for e in self.entries)

    def __str__(self) -> str:
        return render_dt(self)


def _validate(entries: Sequence[int]) -> None:
    c = len(entries)
    seen = set()
    for e in entries:
        if e == 0 or e % 2:
            raise DTCodeError(f"entry {e} is not a nonzero even integer")
        if abs(e) in seen:
            raise DTCodeError(f"duplicate absolute value {abs(e)}")
        seen.add(abs(e))
    if seen != set(range(2, 2 * c + 1, 2)):
        raise DTCodeError(
            f"absolute values {sorted(seen)} are not exactly {{2, ..., {2 * c}}}"
        )


def _normalize_signs(entries: Sequence[int]) -> tuple[int, ...]:
    if entries and all(e < 0 for e in entries):
        return tuple(-e for e in entries)
    return tuple(entries)


_TOKEN = re.compile(r"[,\s\[\]]+")
_INT = re.compile(r"^[+-]?\d+$")


def parse_dt(text: str) -> DTCode:
    """Parse ``"[name] e1 e2 ... ec"`` (whitespace or comma separated).

    A leading token that is not an integer is taken as the knot name.
    """
    tokens = [t for t in _TOKEN.split(text.strip()) if t]
    if not tokens:
        raise DTCodeError("empty input")
    name = None
    if not _INT.match(tokens[0]):
        name, tokens = tokens[0], tokens[1:]
    if not tokens:
        raise DTCodeError(f"no entries for {name!r}")
    bad = [t for t in tokens if not _INT.match(t)]
    if bad:
        raise DTCodeError(f"non-integer token {bad[0]!r}")
    entries = [int(t) for t in tokens]
    return DTCode(_normalize_signs(entries), name)


def render_dt(code: DTCode, with_name: bool = True) -> str:
    body = " ".join(str(e) for e in code.entries)
    if with_name and code.name:
        return f"{code.name} {body}"
    return body


def read_table(lines: Iterable[str]) -> Iterator[tuple[int, DTCode]]:
    """Yield ``(line_number, code)`` from a knot table; ``#`` starts a comment."""
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            try:
                yield lineno, parse_dt(line)
            except DTCodeError as exc:
                raise DTCodeError(f"line {lineno}: {exc}") from exc


def dt_pairing(code: DTCode) -> set[tuple[int, int]]:
    """The set ``{(2k - 1, |entries[k]|)}`` partitioning ``{1, ..., 2c}``."""
    return {(2 * k + 1, abs(e)) for k, e in enumerate(code.entries)}


def gauss_sequence(code: DTCode) -> list[tuple[int, bool]]:
    """Per passage 1..2c: ``(crossing index, passes over)``.

    Crossing ``k`` is the one visited at odd passage ``2k + 1``.
    """
    seq: list[tuple[int, bool]] = [(-1, False)] * (2 * code.crossings)
    for k, e in enumerate(code.entries):
        even_over = e > 0
        seq[2 * k] = (k, not even_over)
        seq[abs(e) - 1] = (k, even_over)
    return seq


def _code_from_gauss(seq: Sequence[tuple[int, bool]]) -> tuple[int, ...]:
    first: dict[int, int] = {}
    partner: dict[int, tuple[int, bool]] = {}
    for pos, (x, over) in enumerate(seq, 1):
        if x in first:
            p = first[x]
            if (p + pos) % 2 == 0:
                raise DTCodeError("crossing visited twice with the same parity")
            odd, even = (p, pos) if p % 2 else (pos, p)
            even_over = over if even == pos else seq[p - 1][1]
            partner[odd] = (even, even_over)
        else:
            first[x] = pos
    entries = [partner[o][0] if partner[o][1] else -partner[o][0]
               for o in range(1, len(seq), 2)]
    return _normalize_signs(entries)


def canonical_entries(seq: Sequence[tuple[int, bool]]) -> tuple[int, ...]:
    """Lexicographically least code over every start and direction."""
    n = len(seq)
    if n == 0:
        return ()
    best = None
    for direction in (1, -1):
        ordered = list(seq) if direction == 1 else list(reversed(seq))
        for s in range(n):
            cand = _code_from_gauss(ordered[s:] + ordered[:s])
            if best is None or cand < best:
                best = cand
    return best


def canonicalize(code: DTCode) -> DTCode:
    return DTCode(canonical_entries(gauss_sequence(code)), code.name)


def extract_dt(diagram: "PlanarDiagram", name: str | None = None) -> DTCode:
    """Canonical DT code read off a planar diagram."""
    return DTCode(canonical_entries(diagram.gauss_sequence()), name)
