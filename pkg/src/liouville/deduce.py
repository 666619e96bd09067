"""Rule engine: classify tower expressions over a Liouville-type variable.

Rules are tried in a fixed order and the first match wins.  Each verdict
carries one rule identifier; the identifiers are the labels of the results
the rules encode (``main1``, ``main2``, ``main3``, ``main4``, ``p1``,
``clast``, ``remLast``, and ``conj`` for the open case).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction

from . import errata
from .construction import INFINITY, parse_nu
from .expr import BinOp, Const, Expr, ExprList, Func, Num, Pow, Tower, Var, parse
from .polytriple import Field, Poly, Triple, is_admissible, to_poly

RULE_ORDER = ("main1", "main3", "main2", "main4", "p1", "clast", "remLast")


class FactClass(str, enum.Enum):
    NU = "NU"
    NU_INFINITY = "NU_INFINITY"
    ULTRA = "ULTRA"


class Status(str, enum.Enum):
    TRANSCENDENTAL = "TRANSCENDENTAL"
    NOT_IN_T = "NOT_IN_T"
    DISJUNCTION = "DISJUNCTION"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Facts:
    """What is known about the variable and the named constants."""
    nu: Fraction | str | None = None
    ultra: bool = False
    in_range: bool = False
    algebraic: frozenset[str] = frozenset()
    in_t: frozenset[str] = frozenset()
    rational_towers: frozenset[int] = frozenset()

    @property
    def infinite(self) -> bool:
        return self.ultra or self.nu == INFINITY

    def nu_exceeds(self, bound) -> bool:
        if self.infinite:
            return True
        return self.nu is not None and self.nu > bound

    @property
    def fact_class(self) -> FactClass | None:
        if self.ultra:
            return FactClass.ULTRA
        if self.nu == INFINITY:
            return FactClass.NU_INFINITY
        return None if self.nu is None else FactClass.NU


class FactError(ValueError):
    pass


_FACT = re.compile(r"\s*([A-Za-z_ξ][A-Za-z0-9_ξ]*)\s*:\s*([A-Za-z_]+)\s*(?:=\s*(.+?))?\s*$")


def parse_facts(items) -> Facts:
    """``xi:ultra``, ``xi:inf``, ``xi:nu=7``, ``xi:range=tower``, ``c:algebraic``, ``z:in_T``, ``h_2:rational``."""
    nu, ultra, rng = None, False, False
    alg, int_, rat = set(), set(), set()
    for item in items:
        m = _FACT.match(item)
        if not m:
            raise FactError(f"cannot parse fact {item!r}")
        subject, kind, value = m.group(1), m.group(2).lower(), m.group(3)
        tower = re.fullmatch(r"h_?(\d+)", subject)
        if subject in ("xi", "ξ", "x", "X"):
            if kind == "ultra":
                ultra = True
            elif kind in ("inf", "infinity"):
                nu = INFINITY
            elif kind == "nu" and value is not None:
                v = parse_nu(value)
                if nu is not None and nu != v:
                    raise FactError("conflicting nu facts")
                nu = v
            elif kind == "range":
                rng = True
            else:
                raise FactError(f"unknown fact {kind!r} for the variable")
        elif tower and kind == "rational":
            rat.add(int(tower.group(1)))
        elif kind == "algebraic":
            alg.add(subject)
        elif kind == "in_t":
            int_.add(subject)
        else:
            raise FactError(f"unknown fact {item!r}")
    return Facts(nu, ultra, rng, frozenset(alg), frozenset(int_ | alg), frozenset(rat))


@dataclass(frozen=True)
class Verdict:
    status: Status
    rule: str | None
    notes: tuple[str, ...] = ()
    items: tuple[str, ...] = ()
    triple: Triple | None = None

    def to_json(self) -> dict:
        out = {"status": self.status.value, "rule": self.rule, "notes": list(self.notes)}
        if self.items:
            out["items"] = list(self.items)
        if self.triple is not None:
            out["triple"] = {k: str(getattr(self.triple, k)) for k in "PQR"}
        return out


# -- pattern extraction -----------------------------------------------


def _expand_towers(e: Expr) -> Expr:
    """``h_k(arg)`` for ``k <= 3`` becomes its explicit power form."""
    if isinstance(e, Tower) and e.k is not None and e.k <= 3:
        arg = _expand_towers(e.arg)
        out = arg
        for _ in range(e.k - 1):
            out = Pow(arg, out)
        return out
    return e


def match_triple(e: Expr, algebraic=frozenset()) -> Triple | None:
    """``P(xi)^(Q(xi)^R(xi))`` with polynomial parts; ``a^b`` reads as ``(a, b, 1)``."""
    e = _expand_towers(e)
    if not isinstance(e, Pow):
        return None
    P = to_poly(e.base, set(algebraic))
    if P is None:
        return None
    if isinstance(e.exp, Pow):
        Q, R = to_poly(e.exp.base, set(algebraic)), to_poly(e.exp.exp, set(algebraic))
        if Q is not None and R is not None:
            return Triple(P, Q, R)
    E = to_poly(e.exp, set(algebraic))
    if E is not None:
        return Triple(P, E, Poly((1,)))
    return None


def tower_height(e: Expr) -> int:
    """Height of a pure tower of the variable, or 0."""
    if isinstance(e, Var):
        return 1
    if isinstance(e, Tower) and isinstance(e.arg, Var):
        return 10**9 if e.k is None else e.k
    if isinstance(e, Pow) and isinstance(e.base, Var):
        h = tower_height(e.exp)
        return h + 1 if h else 0
    return 0


def _int_value(e: Expr) -> int | None:
    if isinstance(e, Num) and e.value.denominator == 1:
        return int(e.value)
    return None


def main4_pattern(e: Expr) -> str | None:
    """Which of the five shapes ``e`` has (with one integer ``n >= 2``), if any."""
    e = _expand_towers(e)
    if not (isinstance(e, Pow) and isinstance(e.exp, Pow)):
        return None
    a, b, c = e.base, e.exp.base, e.exp.exp
    ints = [_int_value(x) for x in (a, b, c)]
    ns = {n for n in ints if n is not None}
    if len(ns) != 1 or min(ns) < 2:
        return None
    if any(i is None and not isinstance(x, Var) for i, x in zip(ints, (a, b, c))):
        return None
    shape = "".join("n" if i is not None else "xi" for i in ints)
    shapes = {"nnxi": "n^(n^xi)", "nxixi": "n^(xi^xi)", "nxin": "n^(xi^n)",
              "xinxi": "xi^(n^xi)", "xixin": "xi^(xi^n)"}
    return shapes.get(shape)


def _in_t_constant(e: Expr, facts: Facts) -> bool:
    """Constants declared (or evidently) in the class T, excluding 0 and 1."""
    if isinstance(e, Num):
        return e.value not in (0, 1)
    if isinstance(e, Const):
        return e.name == "e" or e.name in facts.in_t
    if isinstance(e, Func) and e.name == "sqrt":
        return isinstance(e.arg, Num) and e.arg.value > 0 and e.arg.value != 1
    return False


def _algebraic_constant(e: Expr, facts: Facts) -> bool:
    if isinstance(e, Num):
        return e.value != 0
    if isinstance(e, Const):
        return e.name in facts.algebraic
    if isinstance(e, Func) and e.name == "sqrt":
        return isinstance(e.arg, Num) and e.arg.value > 0
    return False


def _zeta_form(e: Expr, facts: Facts) -> Triple | None:
    """``zeta^(Q(xi)^R(xi))`` or ``beta^(alpha Q^R)`` with the base in T; returns ``(2, Q, R)``."""
    if not isinstance(e, Pow):
        return None
    base, ex = e.base, e.exp
    if not _in_t_constant(base, facts):
        return None
    if isinstance(ex, BinOp) and ex.op == "*" and _algebraic_constant(ex.left, facts):
        # zeta^(alpha y) = (zeta^alpha)^y and zeta^alpha stays in T
        ex = ex.right
    alg = set(facts.algebraic)
    if isinstance(ex, Pow):
        Q, R = to_poly(ex.base, alg), to_poly(ex.exp, alg)
        if Q is not None and R is not None:
            return Triple(Poly((2,)), Q, R)
    Q = to_poly(ex, alg)
    if Q is not None:
        return Triple(Poly((2,)), Q, Poly((1,)))
    return None


def _is_integer_nonconstant(p: Poly) -> bool:
    return p.is_rational() and p.ring.value == "INT" and p.degree >= 1


# -- classification ---------------------------------------------------

NOT_IN_T_NOTE = "T contains every algebraic number, so a number outside T is transcendental"
OPEN_NOTE = ("the linear-form argument breaks down from h_4 on: a coefficient becomes a value "
             "such as h_3(r) for non-integer rational r, which is transcendental, so lower bounds "
             "for linear forms with algebraic coefficients no longer apply")


def _tower_list(e: Expr) -> list[int] | None:
    if not isinstance(e, ExprList):
        return None
    ks = []
    for item in e.items:
        if not (isinstance(item, Tower) and item.k is not None and isinstance(item.arg, Var)):
            return None
        ks.append(item.k)
    return ks


def classify(e: Expr | str, facts: Facts | list[str] = Facts()) -> Verdict:
    """First matching rule in the fixed order, else ``UNKNOWN``."""
    if not isinstance(facts, Facts):
        facts = parse_facts(facts)
    if isinstance(e, str):
        e = parse(e, sorted(facts.in_t | facts.algebraic))
    t = match_triple(e, facts.algebraic)

    # main1: integer admissible triple, finite nu above 6 deg R
    if t is not None and facts.nu not in (None, INFINITY):
        adm = is_admissible(t, Field.Z)
        r = max(t.R.degree, 0)
        if adm.admissible and facts.nu > 6 * r:
            return Verdict(Status.TRANSCENDENTAL, "main1",
                           (f"triple {t} is Z-admissible and nu = {facts.nu} > 6 deg R = {6 * r}",), triple=t)

    # main3: xi^(xi^xi) for ultra xi
    if facts.ultra and tower_height(e) == 3:
        return Verdict(Status.TRANSCENDENTAL, "main3", ("xi^(xi^xi) for an ultra-Liouville xi",),
                       triple=t)

    # main2: infinity-Liouville with non-constant integer polynomials
    if t is not None and facts.infinite and all(_is_integer_nonconstant(p) for p in (t.P, t.Q, t.R)):
        return Verdict(Status.TRANSCENDENTAL, "main2", ("non-constant integer P, Q, R",), triple=t)

    # main4: five explicit shapes, nu > 6
    shape = main4_pattern(e)
    if shape is not None and facts.nu_exceeds(6):
        notes = [f"pattern {shape}"]
        if t is not None and not is_admissible(t, Field.Z).admissible:
            notes.append(f"is_admissible reports {is_admissible(t, Field.Z).label}; "
                         "the pattern rule takes precedence")
        notes.append(errata.CLAUSE_III)
        return Verdict(Status.TRANSCENDENTAL, "main4", tuple(notes), triple=t)

    # p1: infinity-Liouville, QBAR-admissible with R in Q[X], or a base in T
    if facts.infinite:
        if t is not None and is_admissible(t, Field.QBAR, r_rational=True).admissible:
            return Verdict(Status.NOT_IN_T, "p1", (f"triple {t} is QBAR-admissible with R in Q[X]", NOT_IN_T_NOTE),
                           triple=t)
        z = _zeta_form(_expand_towers(e), facts)
        if z is not None and is_admissible(z, Field.QBAR, r_rational=True).admissible:
            return Verdict(Status.NOT_IN_T, "p1", ("base lies in T; exponent Q(xi)^R(xi) admissible",
                                                   NOT_IN_T_NOTE), triple=z)

    # clast: towers of a positive infinity-Liouville xi
    if facts.infinite:
        if isinstance(e, Tower) and e.k is None and isinstance(e.arg, Var) and facts.in_range:
            return Verdict(Status.TRANSCENDENTAL, "clast", ("item (i): h(xi) with xi in [e^-e, e^(1/e)]",))
        ks = _tower_list(e)
        if ks is not None and len(ks) == 2 and ks[1] == ks[0] + 1:
            items = tuple(f"h_{k}(xi)" for k in ks)
            return Verdict(Status.DISJUNCTION, "clast", ("item (ii): at least one of the two is transcendental",),
                           items)
        if isinstance(e, Tower) and e.k is not None and isinstance(e.arg, Var):
            for j in facts.rational_towers:
                if e.k in (j + 1, j + 2):
                    return Verdict(Status.TRANSCENDENTAL, "clast",
                                   (f"item (iii): h_{j}(xi) is rational",))

    # remLast: h_1, h_2, h_3 for ultra xi
    if facts.ultra and isinstance(e, Tower) and e.k is not None and e.k <= 3 and isinstance(e.arg, Var):
        return Verdict(Status.TRANSCENDENTAL, "remLast", (f"h_{e.k}(xi) for an ultra-Liouville xi",))

    notes = []
    h = tower_height(e)
    if h >= 4:
        if h < 10**9:
            notes.append(f"pure tower of height {h}")
        notes.append(OPEN_NOTE)
        if facts.ultra:
            notes.append("conjectured transcendental for ultra-Liouville xi")
        return Verdict(Status.UNKNOWN, "conj", tuple(notes))
    if t is not None:
        adm = is_admissible(t, Field.Z)
        if not adm.admissible:
            notes.append(f"triple {t} is {adm.label}")
            notes.extend(adm.notes)
        if facts.nu not in (None, INFINITY) and not facts.nu > 6 * max(t.R.degree, 0):
            notes.append(f"nu = {facts.nu} does not exceed 6 deg R")
    if facts.fact_class is None:
        notes.append("no approximation fact about xi was given")
    return Verdict(Status.UNKNOWN, None, tuple(notes))


def classify_text(text: str, facts=()) -> tuple[Expr, Verdict]:
    f = facts if isinstance(facts, Facts) else parse_facts(facts)
    e = parse(text, sorted(f.in_t | f.algebraic))
    return e, classify(e, f)

