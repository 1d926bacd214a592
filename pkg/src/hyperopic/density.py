"""Exact density arithmetic for clique / co-clique joins.

``K_i v co-K_j`` has hyperopic cop number ``i // 2 + 1`` for ``i, j >= 2``, so
its density is a rational function of ``(i, j)``.  A chain grows such joins one
vertex at a time and then tops them up with ``x`` clique and ``y`` co-clique
vertices so each element hits a prescribed density exactly.  Everything here
is integer or ``Fraction`` arithmetic.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterator

Rational = Fraction

HALF = Fraction(1, 2)

__all__ = [
    "Rational",
    "NeedPadding",
    "ChainElement",
    "Chain",
    "vlem_cop_number",
    "element_density",
    "beta",
    "solve_diophantine",
    "pad_for_positive_beta",
    "approximant_sequence",
    "build_chain",
    "chain_for",
    "parse_target",
    "NAMED_TARGETS",
]


class NeedPadding(ValueError):
    """beta <= 0: add co-clique vertices before solving."""

    def __init__(self, beta: int):
        super().__init__(f"beta = {beta} <= 0; pad with co-clique vertices first")
        self.beta = beta


def _check_sizes(i: int, j: int) -> None:
    if i < 2 or j < 2:
        raise ValueError(f"need at least two clique and two co-clique vertices, got ({i}, {j})")


def vlem_cop_number(r: int, s: int) -> int:
    """Hyperopic cop number of K_r joined with a co-clique of size s."""
    _check_sizes(r, s)
    return r // 2 + 1


def element_density(i: int, j: int) -> Fraction:
    return Fraction(vlem_cop_number(i, j), i + j)


def beta(a: int, b: int, i: int, j: int) -> int:
    return a * i + a * j - (i // 2) * b - b


def _check_target(a: int, b: int) -> None:
    if not 0 < 2 * a < b:
        raise ValueError(f"need 0 < 2a < b, got a={a}, b={b}")
    if math.gcd(a, b) != 1:
        raise ValueError(f"{a}/{b} is not in lowest terms")


def _egcd(p: int, q: int) -> tuple[int, int, int]:
    """(g, s, t) with p*s + q*t = g = gcd(p, q)."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while q:
        k = p // q
        p, q = q, p - k * q
        s0, s1 = s1, s0 - k * s1
        t0, t1 = t1, t0 - k * t1
    return p, s0, t0


def _ceil_div(p: int, q: int) -> int:
    return -(-p // q)


def solve_diophantine(a: int, b: int, i: int, j: int) -> tuple[int, int]:
    """Least nonnegative (x, y), x even, with density(i + x, j + y) == a / b.

    Writes the condition as ``A*x - B*y = c`` with ``gcd(A, B) = 1``
    (``A = b/2 - a, B = a, c = beta`` when b is even; ``A = b - 2a, B = 2a,
    c = 2*beta`` when b is odd), takes a particular solution from the
    extended Euclidean algorithm, and walks the one-parameter family
    ``(x0 + B*t, y0 + A*t)`` to the smallest admissible member.
    """
    _check_target(a, b)
    _check_sizes(i, j)
    bt = beta(a, b, i, j)
    if bt <= 0:
        raise NeedPadding(bt)
    if b % 2 == 0:
        A, B, c = b // 2 - a, a, bt
    else:
        A, B, c = b - 2 * a, 2 * a, 2 * bt
    g, s, t = _egcd(A, B)
    assert g == 1
    # A*s + B*t = 1  =>  A*(s*c) - B*(-t*c) = c
    x0, y0 = s * c, -t * c
    k = max(_ceil_div(-x0, B), _ceil_div(-y0, A))
    x, y = x0 + B * k, y0 + A * k
    if x % 2:
        # only reachable for even b, where B = a is odd
        x, y = x + B, y + A
    if not (x >= 0 and y >= 0 and x % 2 == 0 and element_density(i + x, j + y) == Fraction(a, b)):
        raise AssertionError(f"bad solution {(x, y)} for {a}/{b} at {(i, j)}")
    return x, y


def pad_for_positive_beta(a: int, b: int, i: int, j: int) -> int:
    """Least j' >= j with beta > 0, equivalently density(i, j') < a/b."""
    _check_target(a, b)
    need = b * (i // 2 + 1) // a - i + 1
    return max(j, need)


# ------------------------------------------------------------------ targets

def _cf_convergents(terms: Iterator[int]) -> Iterator[Fraction]:
    h0, h1, k0, k1 = 0, 1, 1, 0
    for q in terms:
        h0, h1 = h1, q * h1 + h0
        k0, k1 = k1, q * k1 + k0
        yield Fraction(h1, k1)


def _rational_terms(r: Fraction) -> Iterator[int]:
    p, q = r.numerator, r.denominator
    while q:
        yield p // q
        p, q = q, p % q


def _sqrt2_minus_1():
    yield 0
    while True:
        yield 2


def _golden_small():
    # (3 - sqrt 5) / 2 = 1 / phi^2
    yield from (0, 2)
    while True:
        yield 1


def _inv_e():
    # e = [2; 1, 2, 1, 1, 4, 1, 1, 6, ...], so 1/e = [0; 2, 1, 2, 1, 1, 4, ...]
    yield from (0, 2, 1)
    m = 2
    while True:
        yield from (m, 1, 1)
        m += 2


NAMED_TARGETS = {
    "sqrt2-1": (_sqrt2_minus_1, math.sqrt(2) - 1),
    "golden": (_golden_small, (3 - math.sqrt(5)) / 2),
    "1/e": (_inv_e, 1 / math.e),
}


def parse_target(text: str):
    """A Fraction from 'a/b' or a decimal, or a named irrational."""
    text = text.strip()
    if text in NAMED_TARGETS:
        return text
    try:
        r = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot parse target {text!r}; use a/b, a decimal, or one of "
                         f"{', '.join(NAMED_TARGETS)}") from None
    return r


def approximant_sequence(r, N: int) -> list[Fraction]:
    """p_0 = 1/2, then N rationals in (0, 1/2) converging to ``r``.

    Interior targets use their continued-fraction convergents that fall
    strictly inside (0, 1/2) (repeating the last once a rational target is
    reached); the endpoints use 1/(n+2) and 1/2 - 1/(n+2).
    """
    if N < 1:
        raise ValueError("need at least one term after p_0")
    if isinstance(r, str):
        if r not in NAMED_TARGETS:
            raise ValueError(f"unknown named target {r!r}")
        terms = NAMED_TARGETS[r][0]()
    else:
        r = Fraction(r)
        if not 0 <= r <= HALF:
            raise ValueError(f"target {r} outside [0, 1/2]")
        if r == 0:
            return [HALF] + [Fraction(1, n + 2) for n in range(1, N + 1)]
        if r == HALF:
            return [HALF] + [HALF - Fraction(1, n + 2) for n in range(1, N + 1)]
        terms = _rational_terms(r)
    out = [HALF]
    for c in _cf_convergents(terms):
        if 0 < c < HALF:
            out.append(c)
            if len(out) == N + 1:
                return out
    while len(out) < N + 1:
        out.append(out[-1])
    return out


# ------------------------------------------------------------------ chains

@dataclass
class ChainElement:
    n: int
    p: Fraction
    i: int
    j: int
    added: str | None = None  # kind of the enumerated vertex x_n
    padding: int = 0
    x: int = 0
    y: int = 0

    def __post_init__(self):
        _check_sizes(self.i, self.j)

    @property
    def density(self) -> Fraction:
        return element_density(self.i, self.j)

    @property
    def cop_number(self) -> int:
        return vlem_cop_number(self.i, self.j)

    @property
    def order(self) -> int:
        return self.i + self.j


@dataclass
class Chain:
    target: object
    elements: list[ChainElement] = field(default_factory=list)

    @property
    def densities(self) -> list[Fraction]:
        return [e.density for e in self.elements]

    def rows(self) -> list[dict]:
        return [{
            "n": e.n,
            "p_n": str(e.p),
            "i": e.i,
            "j": e.j,
            "x_added": e.x,
            "y_added": e.y,
            "c_H": e.cop_number,
            "|V|": e.order,
            "density": str(e.density),
        } for e in self.elements]

    def to_csv(self) -> str:
        buf = io.StringIO()
        rows = self.rows()
        writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()

    def to_json(self) -> str:
        detail = []
        for row, e in zip(self.rows(), self.elements):
            row = dict(row, enumerated=e.added, padding=e.padding)
            detail.append(row)
        return json.dumps({"target": str(self.target), "elements": detail}, sort_keys=True)


CSV_FIELDS = ["n", "p_n", "i", "j", "x_added", "y_added", "c_H", "|V|", "density"]


def vertex_kind(n: int) -> str:
    """Enumeration of the limit graph: x_0 clique, x_1 co-clique, alternating."""
    return "clique" if n % 2 == 0 else "coclique"


def build_chain(p: list[Fraction], target=None) -> Chain:
    """Chain of joins whose n-th element has density exactly p[n].

    Step n adds the enumerated vertex x_n, keeps the result if it already
    has density p[n], and otherwise pads with co-clique vertices until the
    density drops below p[n] and adds the Diophantine top-up.
    """
    if not p or Fraction(p[0]) != HALF:
        raise ValueError("the sequence must start with 1/2")
    chain = Chain(target, [ChainElement(0, HALF, 2, 2)])
    for n in range(1, len(p)):
        pn = Fraction(p[n])
        if not 0 < pn < HALF:
            raise ValueError(f"p_{n} = {pn} must lie strictly between 0 and 1/2")
        prev = chain.elements[-1]
        kind = vertex_kind(n)
        i, j = (prev.i + 1, prev.j) if kind == "clique" else (prev.i, prev.j + 1)
        elem = ChainElement(n, pn, i, j, added=kind)
        if element_density(i, j) != pn:
            a, b = pn.numerator, pn.denominator
            j2 = pad_for_positive_beta(a, b, i, j)
            x, y = solve_diophantine(a, b, i, j2)
            elem = ChainElement(n, pn, i + x, j2 + y, kind, j2 - j, x, y)
        chain.elements.append(elem)
    return chain


def chain_for(target, terms: int) -> Chain:
    return build_chain(approximant_sequence(target, terms), target)


def as_dict(e: ChainElement) -> dict:
    d = asdict(e)
    d["p"] = str(e.p)
    return d
