"""Finite-rank rings over the integers, presented by structure constants.

A presentation stores the tensor c[i][j][k] with e_i * e_j = sum_k
c[i][j][k] e_k plus the coordinates of the identity.  Associativity and
the identity laws are checked exhaustively on load.  All arithmetic in
the rationalized ring uses fractions.Fraction; orders and divisibility
questions demand exact answers, so no floating point appears anywhere.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .errors import NonInvertibleError, ParameterError, PresentationError
from .polynomials import univariate

BUNDLED_RINGS = ("integers", "gaussian_integers", "z_cross_z", "upper_triangular_2x2")


@dataclass(frozen=True)
class RingPresentation:
    """Structure constants and identity coordinates of a finite-rank ring."""

    rank: int
    structure: tuple
    identity: tuple

    def __post_init__(self):
        n = self.rank
        if n < 1:
            raise PresentationError("rank must be at least 1")
        if n > 16:
            raise PresentationError("presentations above rank 16 are unsupported")
        struct = tuple(
            tuple(tuple(int(x) for x in row) for row in plane) for plane in self.structure
        )
        if len(struct) != n or any(
            len(plane) != n or any(len(row) != n for row in plane) for plane in struct
        ):
            raise PresentationError("structure tensor must be rank x rank x rank")
        ident = tuple(int(x) for x in self.identity)
        if len(ident) != n:
            raise PresentationError("identity vector length must equal rank")
        object.__setattr__(self, "structure", struct)
        object.__setattr__(self, "identity", ident)

    def mul(self, x, y):
        """Product of two coordinate vectors (ints or Fractions)."""
        n = self.rank
        out = [0] * n
        for i in range(n):
            if not x[i]:
                continue
            for j in range(n):
                if not y[j]:
                    continue
                coeff = x[i] * y[j]
                row = self.structure[i][j]
                for k in range(n):
                    if row[k]:
                        out[k] += coeff * row[k]
        return out

    def basis_vector(self, i: int) -> list[int]:
        return [1 if j == i else 0 for j in range(self.rank)]

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "structure": [[list(r) for r in plane] for plane in self.structure],
            "identity": list(self.identity),
        }


def validate(pres: RingPresentation) -> list[str]:
    """All associativity triples and identity laws, exhaustively.

    Returns the list of violated laws; empty means the presentation is a
    genuine associative unital ring on a free rank-n additive group.
    """
    n = pres.rank
    violations = []
    basis = [pres.basis_vector(i) for i in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                left = pres.mul(pres.mul(basis[i], basis[j]), basis[k])
                right = pres.mul(basis[i], pres.mul(basis[j], basis[k]))
                if left != right:
                    violations.append(f"associativity fails at (e{i}, e{j}, e{k})")
    u = list(pres.identity)
    for i in range(n):
        if pres.mul(u, basis[i]) != basis[i]:
            violations.append(f"left identity fails at e{i}")
        if pres.mul(basis[i], u) != basis[i]:
            violations.append(f"right identity fails at e{i}")
    return violations


def load_ring(source, strict: bool = True) -> RingPresentation:
    """Load a presentation from a JSON file path or parsed dict."""
    if isinstance(source, dict):
        data = source
    else:
        with open(source, encoding="utf-8") as fh:
            data = json.load(fh)
    pres = RingPresentation(data["rank"], data["structure"], data["identity"])
    if strict:
        violations = validate(pres)
        if violations:
            raise PresentationError("; ".join(violations))
    return pres


def bundled_ring(name: str) -> RingPresentation:
    """One of the presentations shipped with the package."""
    path = resources.files("padic_rigid").joinpath(f"data/rings/{name}.json")
    return load_ring(json.loads(path.read_text()))


def integers() -> RingPresentation:
    return RingPresentation(1, (((1,),),), (1,))


def gaussian_integers() -> RingPresentation:
    structure = (
        ((1, 0), (0, 1)),
        ((0, 1), (-1, 0)),
    )
    return RingPresentation(2, structure, (1, 0))


def regular_rep(pres: RingPresentation, a) -> list[list[int]]:
    """Matrix of left multiplication x -> a*x in the ring basis."""
    n = pres.rank
    mat = [[0] * n for _ in range(n)]
    for j in range(n):
        col = pres.mul(a, pres.basis_vector(j))
        for k in range(n):
            mat[k][j] = col[k]
    return mat


@dataclass(frozen=True)
class RationalVector:
    """Coordinates in the rationalized ring, reduced fractions."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def __len__(self):
        return len(self.coords)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def scale(self, c) -> "RationalVector":
        return RationalVector(tuple(Fraction(c) * x for x in self.coords))

    def __add__(self, other: "RationalVector") -> "RationalVector":
        return RationalVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "RationalVector") -> "RationalVector":
        return RationalVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def to_json(self) -> dict:
        return {"coords": [str(c) for c in self.coords]}


def _det_fraction(matrix) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    n = len(matrix)
    m = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[pivot], m[col] = m[col], m[pivot]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det


def _solve_fraction(matrix, b) -> list[Fraction] | None:
    """Solve an n x n rational system exactly; None when singular."""
    n = len(matrix)
    m = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(matrix, b)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return None
        if pivot != col:
            m[pivot], m[col] = m[col], m[pivot]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def invert_in_QA(pres: RingPresentation, x) -> RationalVector:
    """Two-sided inverse in the rationalized ring, when it exists."""
    mat = regular_rep(pres, x)
    sol = _solve_fraction(mat, list(pres.identity))
    if sol is None:
        raise NonInvertibleError(f"element {list(x)} is a zero divisor or zero")
    inv = RationalVector(tuple(sol))
    back = pres.mul(inv.coords, list(x))
    if [Fraction(c) for c in back] != [Fraction(c) for c in pres.identity]:
        raise NonInvertibleError(f"element {list(x)} has no two-sided inverse")
    return inv


def order_in_QA_mod_A(v: RationalVector) -> int:
    """Least positive m with m*v integral: the lcm of the denominators."""
    m = 1
    for c in v.coords:
        m = m * c.denominator // math.gcd(m, c.denominator)
    return m


# ---------------------------------------------------------------------------
# Univariate integer polynomial helpers for the adjugate computation.


def _poly_trim(c: list[int]) -> list[int]:
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def _poly_is_zero(c: list[int]) -> bool:
    return all(x == 0 for x in c)


def _poly_content(c: list[int]) -> int:
    g = 0
    for x in c:
        g = math.gcd(g, abs(x))
    return g or 1


def _frac_trim(c) -> None:
    while len(c) > 1 and c[-1] == 0:
        c.pop()


def _frac_divmod(f: list[Fraction], d: list[Fraction]):
    """Quotient and remainder of dense coefficient lists over Q."""
    r = list(f)
    _frac_trim(r)
    q = [Fraction(0)] * max(len(r) - len(d) + 1, 1)
    while len(r) >= len(d) and not all(x == 0 for x in r):
        factor = r[-1] / d[-1]
        shift = len(r) - len(d)
        q[shift] = factor
        for i, dc in enumerate(d):
            r[shift + i] -= factor * dc
        r.pop()
        _frac_trim(r)
    return q, r


def _poly_gcd_z(f: list[int], g: list[int]) -> list[int]:
    """Integer polynomial gcd (content gcd times primitive gcd), positive lead."""
    if _poly_is_zero(f):
        return _poly_trim(list(g))
    if _poly_is_zero(g):
        return _poly_trim(list(f))
    content = math.gcd(_poly_content(f), _poly_content(g))
    a = [Fraction(x) for x in _poly_trim(list(f))]
    b = [Fraction(x) for x in _poly_trim(list(g))]
    while not all(x == 0 for x in b):
        _, r = _frac_divmod(a, b)
        a, b = b, r
    denom_lcm = 1
    for x in a:
        denom_lcm = denom_lcm * x.denominator // math.gcd(denom_lcm, x.denominator)
    ints = [int(x * denom_lcm) for x in a]
    prim = _poly_content(ints)
    ints = [x // prim for x in ints]
    if ints[-1] < 0:
        ints = [-x for x in ints]
    return [content * x for x in ints]


def _poly_div_exact(f: list[int], d: list[int]) -> list[int]:
    """Exact division of integer polynomials (raises if not exact)."""
    q, r = _frac_divmod(
        [Fraction(x) for x in f], [Fraction(x) for x in _poly_trim(list(d))]
    )
    if not all(x == 0 for x in r):
        raise ParameterError("polynomial division was not exact")
    if any(x.denominator != 1 for x in q):
        raise ParameterError("polynomial division left fractions")
    return _poly_trim([int(x) for x in q])


def _poly_resultant(f: list[int], g: list[int]) -> int:
    """Resultant via the Sylvester matrix, exact."""
    f = _poly_trim(list(f))
    g = _poly_trim(list(g))
    df, dg = len(f) - 1, len(g) - 1
    if df == 0 and dg == 0:
        return 1
    if df == 0:
        return f[0] ** dg
    if dg == 0:
        return g[0] ** df
    size = df + dg
    syl = [[0] * size for _ in range(size)]
    for row in range(dg):
        for i, c in enumerate(reversed(f)):
            syl[row][row + i] = c
    for row in range(df):
        for i, c in enumerate(reversed(g)):
            syl[dg + row][row + i] = c
    det = _det_fraction(syl)
    if det.denominator != 1:
        raise AssertionError("integer resultant came out fractional")
    return int(det)


def _prime_factors(n: int) -> set[int]:
    n = abs(n)
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.add(n)
    return out


def charpoly_and_adjugate(pres: RingPresentation, a):
    """Characteristic polynomial of left multiplication and adj(c*I - M).

    Uses the Faddeev-LeVerrier recurrence, which stays in exact integer
    arithmetic: returns (charpoly coeffs low-to-high, matrix of coefficient
    lists) with adj(c*I - M) = sum_k c**(n-1-k) * M_{k+1}.
    """
    n = pres.rank
    mat = regular_rep(pres, a)

    def mat_mul(x, y):
        return [
            [sum(x[i][l] * y[l][j] for l in range(n)) for j in range(n)]
            for i in range(n)
        ]

    def trace(x):
        return sum(x[i][i] for i in range(n))

    ms = []
    cs = [0] * (n + 1)
    cs[n] = 1
    mk = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        ms.append(mk)
        am = mat_mul(mat, mk)
        ck = -trace(am)
        if ck % k:
            raise AssertionError("Faddeev-LeVerrier division failed")
        ck //= k
        cs[n - k] = ck
        mk = [[am[i][j] + (ck if i == j else 0) for j in range(n)] for i in range(n)]
    adj = [[[0] * n for _ in range(n)] for _ in range(n)]
    # adj[i][j] is a coefficient list in c: sum over k of c**(n-1-k) * ms[k]
    for k in range(n):
        power = n - 1 - k
        for i in range(n):
            for j in range(n):
                adj[i][j][power] += ms[k][i][j]
    return cs, adj


def denominator_polynomial(pres: RingPresentation, a, e):
    """Reduced denominator governing the order of (c - a)**-1 * e.

    Every coordinate of adj(c*I - M_a) * e over det(c*I - M_a) is reduced
    to coprime integer polynomials.  Returns (f, exceptional, coordinates)
    where f is the reduced denominator of the first non-zero coordinate,
    exceptional is the finite set of primes dividing some resultant of a
    reduced numerator/denominator pair, and coordinates retains every
    pair for reporting.
    """
    if all(x == 0 for x in e):
        raise ParameterError("e must be non-zero")
    n = pres.rank
    charpoly, adj = charpoly_and_adjugate(pres, a)
    coordinates = []
    f_poly = None
    exceptional: set[int] = set()
    for i in range(n):
        num = [0] * n
        for j in range(n):
            for power in range(n):
                num[power] += adj[i][j][power] * e[j]
        num = _poly_trim(num)
        if _poly_is_zero(num):
            coordinates.append({"numerator": [0], "denominator": [1]})
            continue
        d = _poly_gcd_z(num, charpoly)
        num_red = _poly_div_exact(num, d)
        den_red = _poly_div_exact(charpoly, d)
        if den_red[-1] < 0:
            den_red = [-x for x in den_red]
            num_red = [-x for x in num_red]
        coordinates.append({"numerator": num_red, "denominator": den_red})
        exceptional |= _prime_factors(_poly_resultant(num_red, den_red))
        if f_poly is None:
            if len(den_red) < 2:
                raise AssertionError("non-zero coordinate with constant denominator")
            f_poly = univariate(den_red)
    if f_poly is None:
        raise AssertionError("all coordinates vanished for non-zero e")
    return f_poly, exceptional, coordinates


def ring_element_from_int(pres: RingPresentation, value: int) -> list[int]:
    """The image of an integer under the unit map, value * identity."""
    return [value * u for u in pres.identity]


def rational_action(pres: RingPresentation, v: RationalVector, e) -> RationalVector:
    """Product v * e in the rationalized ring (e integral)."""
    return RationalVector(tuple(pres.mul(list(v.coords), list(e))))
