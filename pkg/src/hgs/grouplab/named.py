"""Named groups: the spec grammar, the fixed catalog and type identification.

Grammar (ASCII)::

    spec   := term ("x" term)*                    direct product
    term   := factor (":" factor "@" action)?     semidirect product
    factor := atom | "(" spec ")"
    atom   := "C"n | "D"n | "S"n | "A"n | "Dic"n | "Q8" | "V4" | "E"p"^"k
            | "F"n | "Hol(" spec ")"

``Dn`` is dihedral of order n.  ``Dic n`` is dicyclic of order 4n (``Q8`` is
``Dic2``).  ``F n`` is the Frobenius group Hol(C_p) with n = p(p-1).

Semidirect actions, with the acting factor a cyclic ``Cm`` whose generator
acts as follows:

    triv     trivially
    inv      by inversion (normal factor abelian)
    pow<k>   by x -> x^k (normal factor cyclic ``Cn``, k^m = 1 mod n)
    cyc      by cyclically shifting the coordinates of ``E p^k`` (k | m)
    mul      by multiplication with an element of order m in the field of
             p^k elements, on ``E p^k`` (m | p^k - 1); ``E2^2:C3@mul`` is A4
"""

from __future__ import annotations

import hashlib
import re
from functools import lru_cache
from math import gcd

from ..errors import SpecError
from ..permcore import Perm, generate_closure
from .cayley import CayleyGroup, direct_product, semidirect_product
from .iso import automorphism_group, find_isomorphism

MAX_CONSTRUCT_ORDER = 5000


# -- basic constructions --------------------------------------------------

def _power_label(sym: str, k: int) -> str:
    return "1" if k == 0 else sym if k == 1 else f"{sym}^{k}"


def cyclic(n: int) -> CayleyGroup:
    if n < 1:
        raise SpecError("cyclic group order must be positive")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return CayleyGroup(table, [_power_label("a", i) for i in range(n)], f"C{n}", check=False)


def dihedral(n: int) -> CayleyGroup:
    """Dihedral group of order n: r^k s^e has index k + (n/2) e."""
    if n < 2 or n % 2:
        raise SpecError(f"dihedral order must be even and >= 2, got {n}")
    m = n // 2

    def mul(a, b):
        k, e = a % m, a // m
        j, f = b % m, b // m
        return (k + (j if e == 0 else -j)) % m + m * ((e + f) % 2)

    labels = [_power_label("r", k) if e == 0 else (_power_label("r", k) + "s" if k else "s")
              for e in range(2) for k in range(m)]
    return CayleyGroup([[mul(a, b) for b in range(n)] for a in range(n)], labels, f"D{n}", check=False)


def dicyclic(n: int, gens: tuple[str, str] = ("a", "x")) -> CayleyGroup:
    """Dicyclic group of order 4n: <a, x | a^2n, x^2 = a^n, x a x^-1 = a^-1>.

    a^k x^e has index k + 2n e.
    """
    if n < 1:
        raise SpecError("dicyclic parameter must be positive")
    m = 2 * n

    def mul(p, q):
        k, e = p % m, p // m
        j, f = q % m, q // m
        if e == 0:
            return (k + j) % m + m * f
        if f == 0:
            return (k - j) % m + m
        return (k - j + n) % m

    sa, sx = gens
    labels = [_power_label(sa, k) if e == 0 else (_power_label(sa, k) + sx if k else sx)
              for e in range(2) for k in range(m)]
    name = "Q8" if n == 2 else f"Dic{n}"
    return CayleyGroup([[mul(p, q) for q in range(2 * m)] for p in range(2 * m)], labels, name, check=False)


def quaternion() -> CayleyGroup:
    """Q8 with elements ordered 1, i, i^2, i^3, j, ij, i^2j, i^3j."""
    return dicyclic(2, ("i", "j"))


def _perm_group_cayley(group, name: str) -> CayleyGroup:
    g = CayleyGroup.from_perm_group(group, name)
    return g


def symmetric(n: int) -> CayleyGroup:
    if n < 1 or n > 6:
        raise SpecError(f"S{n} is not supported")
    gens = []
    if n >= 2:
        gens.append(Perm([1, 0] + list(range(2, n))))
        gens.append(Perm(list(range(1, n)) + [0]))
    return _perm_group_cayley(generate_closure(n, gens), f"S{n}")


def alternating(n: int) -> CayleyGroup:
    if n < 1 or n > 6:
        raise SpecError(f"A{n} is not supported")
    gens = []
    for k in range(n - 2):
        img = list(range(n))
        img[k], img[k + 1], img[k + 2] = k + 1, k + 2, k
        gens.append(Perm(img))
    return _perm_group_cayley(generate_closure(n, gens), f"A{n}")


def elementary_abelian(p: int, k: int) -> CayleyGroup:
    if not _is_prime(p) or k < 1:
        raise SpecError(f"E{p}^{k} needs a prime and a positive exponent")
    g = cyclic(p)
    for _ in range(k - 1):
        g = direct_product(g, cyclic(p))
    g.name = f"E{p}^{k}"
    return g


def holomorph_group(n: CayleyGroup, name: str | None = None) -> CayleyGroup:
    """N x| Aut(N) as an abstract group."""
    aut = automorphism_group(n)
    aut_g = CayleyGroup.from_perm_group(aut)
    action = [tuple(a) for a in aut.elements]
    return semidirect_product(n, aut_g, action, name or f"Hol({n.name})")


def frobenius(order: int) -> CayleyGroup:
    p = _frobenius_prime(order)
    if p is None:
        raise SpecError(f"F{order}: order must be p(p-1) for a prime p")
    return holomorph_group(cyclic(p), f"F{order}")


def _frobenius_prime(order: int):
    for p in range(2, order + 2):
        if p * (p - 1) == order and _is_prime(p):
            return p
    return None


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


# -- parser --------------------------------------------------------------

_ATOM_RE = re.compile(r"Dic(\d+)|Q8|V4|E(\d+)\^(\d+)|([CDSAF])(\d+)")


class _Parser:
    def __init__(self, text: str):
        self.text = text.replace(" ", "")
        self.pos = 0

    def error(self, msg):
        raise SpecError(f"{msg} at position {self.pos} in {self.text!r}")

    def peek(self, s):
        return self.text.startswith(s, self.pos)

    def eat(self, s):
        if not self.peek(s):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def parse(self):
        g, kind = self.spec()
        if self.pos != len(self.text):
            self.error("trailing input")
        return g

    def spec(self):
        g, kind = self.term()
        while self.peek("x"):
            self.eat("x")
            h, _ = self.term()
            g, kind = direct_product(g, h), None
            _check_order(g.order)
        return g, kind

    def term(self):
        h, hkind = self.factor()
        if not self.peek(":"):
            return h, hkind
        self.eat(":")
        gp, gkind = self.factor()
        self.eat("@")
        m = re.compile(r"[a-z]+\d*").match(self.text, self.pos)
        if not m:
            self.error("expected an action name")
        self.pos = m.end()
        action = _semidirect_action(m.group(0), h, hkind, gp, gkind)
        g = semidirect_product(h, gp, action)
        _check_order(g.order)
        return g, None

    def factor(self):
        if self.peek("Hol("):
            self.eat("Hol(")
            inner, _ = self.spec()
            self.eat(")")
            _check_order(inner.order * 64)
            return holomorph_group(inner), None
        if self.peek("("):
            self.eat("(")
            g, kind = self.spec()
            self.eat(")")
            return g, kind
        m = _ATOM_RE.match(self.text, self.pos)
        if not m:
            self.error("expected a group atom")
        self.pos = m.end()
        tok = m.group(0)
        if m.group(1):
            n = int(m.group(1))
            _check_order(4 * n)
            return dicyclic(n), None
        if tok == "Q8":
            return quaternion(), None
        if tok == "V4":
            return elementary_abelian(2, 2), ("E", 2, 2)
        if m.group(2):
            p, k = int(m.group(2)), int(m.group(3))
            _check_order(p ** k)
            return elementary_abelian(p, k), ("E", p, k)
        letter, n = m.group(4), int(m.group(5))
        if letter == "C":
            _check_order(n)
            return cyclic(n), ("C", n)
        if letter == "D":
            _check_order(n)
            return dihedral(n), None
        if letter == "S":
            return symmetric(n), None
        if letter == "A":
            return alternating(n), None
        return frobenius(n), None


def _check_order(n):
    if n > MAX_CONSTRUCT_ORDER:
        raise SpecError(f"unsupported order {n}")


def _semidirect_action(name, h, hkind, gp, gkind):
    if gkind is None or gkind[0] != "C":
        raise SpecError("the acting factor of a semidirect product must be a cyclic atom Cm")
    m = gkind[1]
    nh = h.order
    if name == "triv":
        gen = tuple(range(nh))
    elif name == "inv":
        if not h.is_abelian:
            raise SpecError("inversion is an automorphism only for abelian groups")
        gen = h.inverses
    elif name.startswith("pow") and name[3:].isdigit():
        if hkind is None or hkind[0] != "C":
            raise SpecError("pow<k> needs a cyclic normal factor Cn")
        k = int(name[3:])
        if gcd(k, nh) != 1:
            raise SpecError(f"x -> x^{k} is not an automorphism of C{nh}")
        gen = tuple((k * x) % nh for x in range(nh))
    elif name == "cyc":
        if hkind is None or hkind[0] != "E":
            raise SpecError("cyc needs an elementary abelian normal factor Ep^k")
        _, p, k = hkind
        def digits(x):
            return [(x // p ** i) % p for i in range(k)]
        def undigits(ds):
            return sum(d * p ** i for i, d in enumerate(ds))
        gen = tuple(undigits(digits(x)[-1:] + digits(x)[:-1]) for x in range(nh))
    elif name == "mul":
        if hkind is None or hkind[0] != "E":
            raise SpecError("mul needs an elementary abelian normal factor Ep^k")
        _, p, k = hkind
        if (p ** k - 1) % m:
            raise SpecError(f"no element of order {m} in the field of {p ** k} elements")
        gen = _field_mult_action(p, k, (p ** k - 1) // m)
    else:
        raise SpecError(f"unknown action {name!r}")
    # element j of Cm is the j-th power of its generator
    action = [tuple(range(nh))]
    for _ in range(1, m):
        prev = action[-1]
        action.append(tuple(gen[prev[x]] for x in range(nh)))
    if tuple(gen[action[-1][x]] for x in range(nh)) != tuple(range(nh)):
        raise SpecError(f"action {name!r} does not have order dividing {m}")
    return action


def _field_mult_action(p, k, power):
    """Multiplication by z^power on F_p[z]/(f) for a primitive f, on coordinate-encoded vectors."""
    from itertools import product

    def mulz(v, f):
        # v * z mod f, f monic given by its lower coefficients
        carry = v[-1]
        out = [0] + list(v[:-1])
        return tuple((out[i] - carry * f[i]) % p for i in range(k))

    for f in product(range(p), repeat=k):
        if f[0] == 0 and k > 1:
            continue
        one = tuple([1] + [0] * (k - 1))
        v, order = mulz(one, f), 1
        while v != one and order <= p ** k:
            v, order = mulz(v, f), order + 1
        if order == p ** k - 1:
            break
    else:
        raise SpecError(f"no primitive polynomial found for {p}^{k}")

    def encode(v):
        return sum(c * p ** i for i, c in enumerate(v))

    gen = []
    for x in range(p ** k):
        v = tuple((x // p ** i) % p for i in range(k))
        # multiply v by z^power: v(z) * z^power
        for _ in range(power):
            v = mulz(v, f)
        gen.append(encode(v))
    return tuple(gen)


def construct_named(spec: str) -> CayleyGroup:
    """Build the group described by ``spec`` (see the module docstring)."""
    if not isinstance(spec, str) or not spec.strip():
        raise SpecError("empty group spec")
    g = _Parser(spec).parse()
    g.name = spec.replace(" ", "")
    return g


# -- catalog -------------------------------------------------------------

# nonabelian groups by order: (canonical name, spec).  Orders in COMPLETE
# list every nonabelian group of that order.
NONABELIAN = {
    6: [("S3", "S3")],
    8: [("D8", "D8"), ("Q8", "Q8")],
    10: [("D10", "D10")],
    12: [("A4", "A4"), ("D12", "D12"), ("Dic3", "Dic3")],
    14: [("D14", "D14")],
    16: [("D16", "D16"), ("Dic4", "Dic4"), ("SD16", "C8:C2@pow3"), ("M16", "C8:C2@pow5"),
         ("C4:C4", "C4:C4@inv"), ("C2xD8", "C2xD8"), ("C2xQ8", "C2xQ8")],
    18: [("D18", "D18"), ("C3xS3", "C3xS3"), ("(C3xC3):C2", "E3^2:C2@inv")],
    20: [("D20", "D20"), ("Dic5", "Dic5"), ("F20", "F20")],
    21: [("C7:C3", "C7:C3@pow2")],
    22: [("D22", "D22")],
    24: [("S4", "S4"), ("C2xA4", "C2xA4"), ("D24", "D24"), ("Dic6", "Dic6"), ("C3:C8", "C3:C8@inv"),
         ("C3xD8", "C3xD8"), ("C3xQ8", "C3xQ8"), ("C4xS3", "C4xS3"), ("C2xDic3", "C2xDic3"),
         ("C2xD12", "C2xD12")],
    26: [("D26", "D26")],
    28: [("D28", "D28"), ("Dic7", "Dic7")],
    30: [("D30", "D30"), ("C5xS3", "C5xS3"), ("C3xD10", "C3xD10")],
    42: [("F42", "F42"), ("D42", "D42"), ("C7xS3", "C7xS3"), ("C3xD14", "C3xD14"),
         ("C2x(C7:C3)", "C2x(C7:C3@pow2)")],
    60: [("A5", "A5")],
}

COMPLETE = {6, 8, 10, 12, 14, 18, 20, 21, 22, 26, 28, 30, 42}


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _partitions(k: int, largest: int | None = None):
    largest = k if largest is None else largest
    if k == 0:
        yield ()
        return
    for part in range(min(k, largest), 0, -1):
        for rest in _partitions(k - part, part):
            yield (part,) + rest


def abelian_types(n: int) -> list[tuple[int, ...]]:
    """Primary decompositions of the abelian groups of order n, as sorted prime powers."""
    combos = [()]
    for p, e in sorted(_factor(n).items()):
        combos = [c + tuple(sorted(p ** a for a in part)) for c in combos for part in _partitions(e)]
    return combos


def abelian_name_from_primary(factors: tuple[int, ...]) -> str:
    if not factors:
        return "C1"
    primes = [next(iter(_factor(q))) for q in factors]
    if len(set(primes)) == len(primes):
        prod = 1
        for q in factors:
            prod *= q
        return f"C{prod}"
    return "x".join(f"C{q}" for q in sorted(factors, key=lambda q: (next(iter(_factor(q))), q)))


def _abelian_primary(g: CayleyGroup) -> tuple[int, ...]:
    orders = g.element_orders
    factors = []
    for p, e in sorted(_factor(g.order).items()):
        # r_k = number of cyclic factors of order >= p^k, from |{x : x^(p^k) = 1}|
        counts = [sum(1 for o in orders if (p ** k) % o == 0) for k in range(e + 1)]
        logs = [_log(c, p) for c in counts]
        r = [logs[k] - logs[k - 1] for k in range(1, e + 1)]
        for k in range(1, e + 1):
            nxt = r[k] if k < e else 0
            factors.extend([p ** k] * (r[k - 1] - nxt))
    return tuple(sorted(factors))


def _log(c, p):
    k = 0
    while c > 1:
        c //= p
        k += 1
    return k


def abelian_groups(n: int) -> list[tuple[str, str]]:
    out = []
    for primary in abelian_types(n):
        name = abelian_name_from_primary(primary)
        spec = name if name.count("x") == 0 else "x".join(f"C{q}" for q in primary)
        out.append((name, spec))
    return out


def _pq(n: int):
    f = _factor(n)
    if len(f) == 2 and all(e == 1 for e in f.values()):
        q, p = sorted(f)
        return p, q
    return None


def is_complete_order(n: int) -> bool:
    if n in COMPLETE or n == 1:
        return True
    f = _factor(n)
    if all(e == 1 for e in f.values()) and _pq(n) is not None:
        return True
    if len(f) == 1 and max(f.values()) <= 2:
        return True
    return gcd(n, _phi(n)) == 1


def _phi(n: int) -> int:
    out = n
    for p in _factor(n):
        out -= out // p
    return out


def groups_of_order(n: int, require_complete: bool = True) -> list[tuple[str, str]]:
    """(name, spec) for the catalog groups of order n, abelian first."""
    if require_complete and not is_complete_order(n):
        raise SpecError(f"the catalog does not list every group of order {n}")
    out = abelian_groups(n)
    if n in NONABELIAN:
        out += NONABELIAN[n]
    elif _pq(n) is not None:
        p, q = _pq(n)
        if (p - 1) % q == 0:
            k = next(k for k in range(2, p) if pow(k, q, p) == 1)
            name = "S3" if n == 6 else f"D{n}" if q == 2 else f"C{p}:C{q}"
            out.append((name, f"D{n}" if q == 2 else f"C{p}:C{q}@pow{k}"))
    return out


@lru_cache(maxsize=None)
def catalog_group(spec: str) -> CayleyGroup:
    return construct_named(spec)


def catalog(max_order: int, complete_only: bool = False) -> list[tuple[str, str]]:
    """Every named catalog group of order <= max_order."""
    out = []
    for n in range(1, max_order + 1):
        if complete_only and not is_complete_order(n):
            continue
        out += groups_of_order(n, require_complete=False)
    return out


def _product_candidates(n: int):
    # nonabelian named X times abelian A, largest X first
    for d in sorted(NONABELIAN, reverse=True):
        if d >= n or n % d:
            continue
        for xname, xspec in NONABELIAN[d]:
            for aname, aspec in abelian_groups(n // d):
                yield f"{aname}x{xname}", f"{aspec}x({xspec})"


_identify_cache: dict[tuple, str] = {}


def identify_type(g: CayleyGroup) -> str:
    """Canonical isomorphism-type name.

    Abelian groups are named from their invariants (``C6``, ``C2xC2xC3``);
    nonabelian ones by isomorphism against the catalog, then against
    products of catalog groups with abelian groups, finally by a fingerprint.
    """
    if g.is_abelian:
        return abelian_name_from_primary(_abelian_primary(g))
    key = g.table
    hit = _identify_cache.get(key)
    if hit is not None:
        return hit
    name = _identify_nonabelian(g)
    if len(_identify_cache) > 4096:
        _identify_cache.clear()
    _identify_cache[key] = name
    return name


def _identify_nonabelian(g: CayleyGroup) -> str:
    n = g.order
    for name, spec in nonabelian_groups(n):
        cand = catalog_group(spec)
        if cand.fingerprint == g.fingerprint and find_isomorphism(g, cand) is not None:
            return name
    for name, spec in _product_candidates(n):
        cand = catalog_group(spec)
        if cand.fingerprint == g.fingerprint and find_isomorphism(g, cand) is not None:
            return name
    digest = hashlib.sha1(repr(g.fingerprint).encode()).hexdigest()[:8]
    return f"order{n}-unidentified-{digest}"


def nonabelian_groups(n: int) -> list[tuple[str, str]]:
    return groups_of_order(n, require_complete=False)[len(abelian_types(n)):]
