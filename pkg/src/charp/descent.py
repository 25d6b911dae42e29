"""Descent along purely inseparable towers of exponent one.

The pushforward along x -> x^p turns symbols over K (with K^p inside F)
into symbols over F by raising both slots to the p-th power.  Combined with
norm equations and the decomposition of classes split by K into symbols
whose radical slots are the tower's radicands, this module implements the
constructive reduction of a class that becomes cyclic over K to a product
of at most n + p - 1 symbols over F.

Every result carries a certificate chaining expr (x) result^op to the empty
expression (elementary steps where possible, invariant-matched oracle
rewrites on the univariate backend), plus labels saying which claims were
oracle-checked, witness-checked, or assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from . import towers as tw
from .certify import CertBuilder, Certificate, verify_certificate
from .invariants import BackendError, RealizeError
from .oracle import expr_invariants, expr_is_split, is_split, realize
from .symbols import BrauerExpr, Symbol, reduce_expr


class DescentError(RuntimeError):
    """A descent procedure could not complete; message carries the report."""


class SplitHypothesisError(DescentError):
    """A precondition 'this class is split' could not be established."""


@dataclass
class SearchConfig:
    norm_bound: int = 4
    elementary_norm_bound: int = 2
    albert_height: int = 1

    def light(self) -> "SearchConfig":
        return SearchConfig(self.elementary_norm_bound, self.elementary_norm_bound,
                            self.albert_height)


@dataclass
class CheckLabel:
    claim: str
    method: str  # "oracle" | "witness" | "assumed"

    def to_json(self) -> dict:
        return {"claim": self.claim, "method": self.method}


# ---------------------------------------------------------------------------
# inseparable towers
# ---------------------------------------------------------------------------

class InsepTower:
    """F(b_1^(1/p), ..., b_n^(1/p)) over the level ``over_level`` of a tower.

    Construction enforces that each radicand is a unit outside the p-th
    powers of the previously built level, which is exactly p-independence;
    dependent radicands are rejected (add) or skipped (try_add)."""

    def __init__(self, base_tower: tw.FieldTower, over_level: Optional[int] = None):
        self.over_level = base_tower.depth if over_level is None else over_level
        if self.over_level != base_tower.depth:
            base_tower = tw.truncate(base_tower, self.over_level)
        self.tower = base_tower
        self.gens: List[Tuple[str, tw.Elem]] = []

    @property
    def top_level(self) -> int:
        return self.over_level + len(self.gens)

    @property
    def degree_log(self) -> int:
        return len(self.gens)

    def add(self, radicand: tw.Elem, name: Optional[str] = None) -> None:
        radicand = tw.rebind(radicand, self.tower)
        if tw.level_of_definition(radicand) > self.over_level:
            raise tw.StepError("radicand must live at the base of the inseparable tower")
        gen = name or tw.fresh_gen_name(self.tower, "r")
        self.tower = tw.make_step(self.tower, "insep_root", gen, radicand)
        self.gens.append((gen, tw.rebind(radicand, self.tower)))

    def try_add(self, radicand: tw.Elem, name: Optional[str] = None) -> bool:
        try:
            self.add(radicand, name)
            return True
        except tw.StepError:
            return False

    def radicands(self) -> List[tw.Elem]:
        return [tw.rebind(b, self.tower) for _, b in self.gens]

    def __repr__(self) -> str:
        from .textform import format_tower
        return "InsepTower(%s)" % format_tower(self.tower)


def build_insep_tower(base_tower: tw.FieldTower, radicands: Sequence[tw.Elem],
                      over_level: Optional[int] = None) -> InsepTower:
    out = InsepTower(base_tower, over_level)
    for b in radicands:
        out.add(b)
    return out


# ---------------------------------------------------------------------------
# the pushforward
# ---------------------------------------------------------------------------

def check_exponent_one(tower: tw.FieldTower, low: int, high: int) -> None:
    """Every step in (low, high] must be an inseparable root with data at or
    below ``low``; then the p-th power of the top level lands in the low one."""
    for lvl in range(low + 1, high + 1):
        step = tower.step_at(lvl)
        if step.kind != "insep_root":
            raise DescentError(
                "pushforward needs a purely inseparable chain; level %d is %s"
                % (lvl, step.kind))
        data = tw.step_defining_elem(tower, lvl)
        if tw.level_of_definition(data) > low:
            raise DescentError(
                "pushforward chain has a radicand above the target level")


def frobenius_push(s: Symbol, down_level: int) -> Symbol:
    """[x, y) over K maps to [x^p, y^p) over F."""
    check_exponent_one(s.tower, down_level, s.level)
    p = s.p
    return Symbol(tw.descend(tw.power(s.a, p), down_level),
                  tw.descend(tw.power(s.b, p), down_level))


def frobenius_push_expr(e: BrauerExpr, down_level: int) -> BrauerExpr:
    """Entrywise pushforward (the pushforward respects tensor products)."""
    return BrauerExpr(e.tower, down_level,
                      [frobenius_push(s, down_level) for s in e.entries])


def scalar_extend(e: BrauerExpr, level: int) -> BrauerExpr:
    return e.lift_to(level)


# ---------------------------------------------------------------------------
# certification helper
# ---------------------------------------------------------------------------

def certify_equivalence(start: BrauerExpr, result: BrauerExpr,
                        cfg: SearchConfig) -> Certificate:
    """A certificate chaining start (x) result^op to the empty expression:
    elementary rewriting first, and when a remainder survives, one
    invariant-matched rewrite on the univariate backend closes it."""
    tower = start.tower
    builder = CertBuilder(tower)
    combined = start.tensor(result.op())
    remainder = reduce_expr(combined, recorder=builder,
                            norm_bound=cfg.elementary_norm_bound)
    if not remainder.is_empty():
        try:
            v = expr_invariants(remainder)
        except BackendError:
            raise DescentError(
                "cannot certify: remainder of length %d and no oracle backend"
                % remainder.length())
        if not v.is_zero():
            raise DescentError("certification failed: remainder has nonzero invariants")
        empty = BrauerExpr(tower, remainder.level, [])
        builder.record("AlbertDecomp", remainder, empty,
                       {"rule": "invariant-matched rewrite"})
    cert = builder.build()
    outcome = verify_certificate(cert)
    if not outcome:
        raise AssertionError("emitted certificate failed replay: %s" % outcome.reason)
    return cert


# ---------------------------------------------------------------------------
# Albert-style decomposition over an inseparable splitting tower
# ---------------------------------------------------------------------------

@dataclass
class DecompositionResult:
    expr: BrauerExpr
    certificate: Certificate
    reported_length: int
    slots: List[Optional[int]] = field(default_factory=list)
    labels: List[CheckLabel] = field(default_factory=list)

    def to_json(self) -> dict:
        from .textform import format_expr
        return {
            "expr": format_expr(self.expr),
            "length": self.reported_length,
            "labels": [l.to_json() for l in self.labels],
            "certificate": self.certificate.to_json(),
        }


def albert_decompose(e: BrauerExpr, K: InsepTower, cfg: SearchConfig = SearchConfig(),
                     check_split: bool = True) -> DecompositionResult:
    """Decompose a class split by K into symbols with the tower's radicands
    in the radical slots; at most one symbol per radicand."""
    tower = K.tower
    f_level = K.over_level
    e = BrauerExpr(tower, f_level, [Symbol(tw.rebind(s.a, tower), tw.rebind(s.b, tower))
                                    for s in e.entries])
    labels: List[CheckLabel] = []
    if check_split:
        lifted = e.lift_to(K.top_level)
        verdict = expr_is_split(lifted, strategy="auto",
                                degree_bound=cfg.elementary_norm_bound)
        if verdict.status == "nonsplit":
            raise SplitHypothesisError("the class is not split by the tower: %s"
                                       % verdict.reason)
        if verdict.status == "unknown":
            raise SplitHypothesisError("split hypothesis not established: %s"
                                       % verdict.reason)
        labels.append(CheckLabel("input class is split by the inseparable tower",
                                 "oracle" if verdict.vector is not None else "witness"))
    try:
        v = expr_invariants(e)
        backend = True
    except BackendError:
        backend = False
    if backend:
        try:
            result = realize(v, tower, f_level, b_slots=K.radicands())
        except RealizeError as err:
            raise DescentError("decomposition not found: %s" % err)
        slots = _match_slots(result, K)
        labels.append(CheckLabel("decomposition matches all local invariants", "oracle"))
    else:
        result, slots = _albert_search(e, K, cfg)
        labels.append(CheckLabel("decomposition verified by elementary reduction",
                                 "witness"))
    if result.length() > K.degree_log:
        raise AssertionError("decomposition length exceeded the radicand count")
    cert = certify_equivalence(e, result, cfg)
    return DecompositionResult(result, cert, result.length(), slots, labels)


def _match_slots(result: BrauerExpr, K: InsepTower) -> List[Optional[int]]:
    rads = K.radicands()
    out: List[Optional[int]] = []
    for s in result.entries:
        idx = next((i for i, b in enumerate(rads)
                    if tw.lift(b, s.level) == s.b), None)
        out.append(idx)
    return out


def _albert_search(e: BrauerExpr, K: InsepTower,
                   cfg: SearchConfig) -> Tuple[BrauerExpr, List[Optional[int]]]:
    """Bounded coefficient search for the left slots, one per radicand,
    verified by elementary reduction of e (x) candidate^op to empty."""
    tower = K.tower
    f_level = K.over_level
    rads = K.radicands()
    pool = [tw.Elem(tower, 0, rf)
            for rf in _slot_pool(tower, cfg.albert_height)]
    from itertools import combinations, product as iproduct
    n = len(rads)
    for size in range(0, n + 1):
        for subset in combinations(range(n), size):
            for choice in iproduct(pool, repeat=size):
                entries = []
                ok = True
                for slot_idx, a0 in zip(subset, choice):
                    a = tw.lift(a0, f_level)
                    if a.is_zero():
                        ok = False
                        break
                    entries.append(Symbol(a, tw.lift(rads[slot_idx], f_level)))
                if not ok and size:
                    continue
                cand = BrauerExpr(tower, f_level, entries)
                # merges and shifts only: keeps candidate screening cheap
                test = reduce_expr(cand.op().tensor(e), norm_bound=0)
                if test.is_empty():
                    return cand, list(subset)
    raise DescentError("decomposition not found within the search bound "
                       "(left-slot height %d)" % cfg.albert_height)


def _slot_pool(tower: tw.FieldTower, height: int):
    out = []
    for h in range(height + 1):
        out.extend(tw._ratfuncs_of_height(tower, h))
    return out


# ---------------------------------------------------------------------------
# inseparable splitting fields of cyclic algebras over a finite extension
# ---------------------------------------------------------------------------

def insep_splitting_field(C: Symbol, f_level: int = 0,
                          cfg: SearchConfig = SearchConfig()) -> InsepTower:
    """A purely inseparable tower K over level ``f_level`` such that C dies
    over the compositum of its own level and K.  The radicands are the
    coefficients of the minimal polynomial of the radical slot over the low
    level, with p-th powers and dependent ones discarded.  The guarantee is
    re-verified; failure is reported, never silently accepted."""
    tower = C.tower
    level = C.level
    coeffs = tw.min_poly(C.b, f_level)
    K = InsepTower(tower, f_level)
    for c in coeffs[:-1]:
        if c.is_zero():
            continue
        K.try_add(c)
    # verify over the compositum: stack the new roots on top of C's level
    comp = tw.truncate(tower, level)
    for name, b in K.gens:
        b_src = tw.Elem(comp, K.over_level, b.rep)
        try:
            comp = tw.make_step(comp, "insep_root", name, b_src)
        except tw.StepError:
            continue  # absorbed by the separable part; contributes nothing
    lifted = Symbol(tw.lift(tw.rebind(C.a, comp), comp.depth),
                    tw.lift(tw.rebind(C.b, comp), comp.depth))
    verdict = is_split(lifted, strategy="auto", degree_bound=cfg.norm_bound)
    if verdict.status != "split":
        raise DescentError(
            "splitting-field verification failed (%s); refusing to accept the tower"
            % verdict.reason)
    return K


# ---------------------------------------------------------------------------
# reduction of a class that becomes cyclic over the tower
# ---------------------------------------------------------------------------

@dataclass
class ReduceOutcome:
    split_part: BrauerExpr       # B: dies over the tower
    cyclic_part: BrauerExpr      # B': at most p - 1 symbols
    certificate: Certificate
    case: str
    labels: List[CheckLabel]
    norm_witness: Optional[tw.Elem] = None

    def total(self) -> BrauerExpr:
        return self.split_part.tensor(self.cyclic_part)

    def total_length(self) -> int:
        return self.split_part.length() + self.cyclic_part.length()


def reduce_to_cyclic_step(A: BrauerExpr, K: InsepTower, cyclic_data: Symbol,
                          cfg: SearchConfig = SearchConfig()) -> ReduceOutcome:
    """Split A (given A over the tower is equivalent to the supplied cyclic
    symbol) as B (x) B' with B dying over the tower and B' of length at most
    p - 1; the total length never exceeds n + p - 1."""
    tower = K.tower
    f_level = K.over_level
    top = K.top_level
    p = tower.p
    n = K.degree_log
    A = BrauerExpr(tower, f_level,
                   [Symbol(tw.rebind(s.a, tower), tw.rebind(s.b, tower))
                    for s in A.entries])
    cyclic = Symbol(tw.rebind(cyclic_data.a, tower), tw.rebind(cyclic_data.b, tower))
    if cyclic.level != top:
        raise ValueError("cyclic data must live at the top of the tower")
    labels = [_hypothesis_label(A, cyclic, top, cfg)]

    verdict = is_split(cyclic, strategy="auto", degree_bound=cfg.elementary_norm_bound)
    if verdict.is_split:
        dec = albert_decompose(A, K, cfg, check_split=True)
        empty = BrauerExpr(tower, f_level, [])
        return ReduceOutcome(dec.expr, empty, dec.certificate, "already-split",
                             labels + dec.labels)

    x, y = cyclic.a, cyclic.b
    x_p = tw.descend(tw.power(x, p), f_level)
    y_p = tw.descend(tw.power(y, p), f_level)
    base = tw.truncate(tower, f_level)
    ext = tw.make_step(base, "artin_schreier", tw.fresh_gen_name(base, "w"),
                       tw.rebind(x_p, base))
    z_prime = tw.solve_norm(tw.rebind(y_p, ext), f_level + 1, f_level,
                            cfg.norm_bound)
    if z_prime is None:
        raise DescentError(
            "no norm witness for the pushed radical slot within degree bound %d"
            % cfg.norm_bound)

    in_f = True
    try:
        z_f = tw.descend(z_prime, f_level)
    except ValueError:
        in_f = False

    if in_f:
        b_prime = Symbol(tw.rebind(x_p, tower), tw.rebind(z_f, tower))
        bp_expr = BrauerExpr(tower, f_level, [b_prime])
        dec = albert_decompose(A.tensor(bp_expr.op()), K, cfg, check_split=True)
        result = dec.expr.tensor(bp_expr)
        if result.length() > n + p - 1:
            raise AssertionError("decomposition exceeded the n + p - 1 bound")
        cert = certify_equivalence(A, result, cfg)
        return ReduceOutcome(dec.expr, bp_expr, cert, "norm-witness-in-base",
                             labels + dec.labels, z_prime)

    # the witness generates the degree-p extension: adjoin p-th roots of its
    # minimal polynomial coefficients (independent, non-p-power ones only)
    coeffs = tw.min_poly(z_prime, f_level)
    M = InsepTower(tower, f_level)
    for name, b in K.gens:
        M.add(tw.Elem(tower, K.over_level, b.rep), name)
    added = []
    for c in coeffs[1:-1]:
        if c.is_zero():
            continue
        if M.try_add(tw.Elem(tower, f_level, c.rep)):
            added.append(len(M.gens) - 1)
    dec = albert_decompose(A, M, cfg, check_split=True)
    b_entries, bp_entries = [], []
    for s, slot in zip(dec.expr.entries, dec.slots):
        if slot is not None and slot in added:
            bp_entries.append(s)
        else:
            b_entries.append(s)
    b_expr = BrauerExpr(M.tower, f_level, b_entries)
    bp_expr = BrauerExpr(M.tower, f_level, bp_entries)
    if bp_expr.length() > p - 1:
        raise AssertionError("cyclic remainder part exceeded p - 1 symbols")
    if b_expr.length() + bp_expr.length() > n + p - 1:
        raise AssertionError("decomposition exceeded the n + p - 1 bound")
    result = b_expr.tensor(bp_expr)
    start = BrauerExpr(M.tower, f_level,
                       [Symbol(tw.rebind(s.a, M.tower), tw.rebind(s.b, M.tower))
                        for s in A.entries])
    cert = certify_equivalence(start, result, cfg)
    case = "norm-witness-quadratic" if p == 2 else "norm-witness-extension"
    return ReduceOutcome(b_expr, bp_expr, cert, case, labels + dec.labels, z_prime)


def _hypothesis_label(A: BrauerExpr, cyclic: Symbol, top: int,
                      cfg: SearchConfig) -> CheckLabel:
    claim = "the class over the tower is equivalent to the supplied cyclic symbol"
    test = A.lift_to(top).tensor(BrauerExpr(cyclic.tower, top, [cyclic]).op())
    try:
        v = expr_invariants(test)
        if not v.is_zero():
            raise SplitHypothesisError(
                "cyclic data does not match the class over the tower")
        return CheckLabel(claim, "oracle")
    except BackendError:
        pass
    reduced = reduce_expr(test, norm_bound=cfg.elementary_norm_bound)
    if reduced.is_empty():
        return CheckLabel(claim, "witness")
    return CheckLabel(claim, "assumed")
