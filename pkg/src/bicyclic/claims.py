"""The claim-by-claim verification suite.

Every structural claim about R that the package can check is replayed here
and reported with one of three verdicts:

* PASS        - the computation confirms the cataloged claim;
* FAIL        - an internal contract of the package itself broke;
* DISCREPANCY - the certificates replay, but the exact oracle contradicts
                the cataloged claim.  These are first-class results (the
                package exists to adjudicate them) and never fail a run.

Reports are deterministic given the configuration: all sampling uses the
seeded generator and output is canonical JSON, so two runs with the same
RunConfig are byte-identical.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    AlgebraElement,
    LaurentPoly,
    ONE,
    X,
    Y,
    _frac_text,
    center_slice,
    diffop_action,
    involution,
    laurent_image,
    matrix_unit,
    monomial,
    to_matrix,
)
from .extensions import (
    ExtSpec,
    ExtVector,
    Iso,
    LinMap,
    NoIso,
    Nonsplit,
    Split,
    check_iso_certificate,
    check_split_certificate,
    classify,
    complete_delta,
    equivalence_test,
    ext_act,
    iso_test,
    random_spec,
    random_vec,
    recheck_nonsplit,
    split_test,
    split_witness,
)
from .extensions import _apply_y  # for the witness annihilation check
from .ideals import (
    PrimeId,
    annihilator,
    essential_check,
    ideal_classify,
    jategaonkar_check,
    lann_chain_check,
    link_graph,
    link_test,
    prime_identities_check,
    stable_ideal_slice,
)
from .modules import Fin, InfShift, Vec, act, column_intertwiner_check, cyclic_witness

PASS = "PASS"
FAIL = "FAIL"
DISCREPANCY = "DISCREPANCY"

_LAMBDAS = (Fraction(1), Fraction(2), Fraction(-1), Fraction(1, 2))


@dataclass(frozen=True)
class RunConfig:
    max_degree: int = 6
    slack_cap: int = 6
    seed: int = 1202

    def __post_init__(self):
        if self.max_degree < 1:
            raise ValueError("max_degree must be >= 1")

    def to_json(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "slack_cap": self.slack_cap,
            "seed": self.seed,
        }


@dataclass
class ClaimEntry:
    id: str
    statement: str
    verdict: str
    certificate: dict

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "statement": self.statement,
            "verdict": self.verdict,
            "certificate": self.certificate,
        }


@dataclass
class ClaimReport:
    config: RunConfig
    entries: list[ClaimEntry] = field(default_factory=list)

    @property
    def counts(self) -> dict:
        out = {PASS: 0, FAIL: 0, DISCREPANCY: 0}
        for e in self.entries:
            out[e.verdict] += 1
        return out

    @property
    def exit_code(self) -> int:
        return 1 if self.counts[FAIL] else 0

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "summary": self.counts,
            "discrepancies": [e.id for e in self.entries if e.verdict == DISCREPANCY],
            "entries": [e.to_json() for e in self.entries],
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = []
        width = max(len(e.id) for e in self.entries) if self.entries else 0
        for e in self.entries:
            lines.append(f"{e.verdict:<12} {e.id:<{width}}  {e.statement}")
        c = self.counts
        lines.append("")
        lines.append(
            f"{len(self.entries)} checks: {c[PASS]} pass, {c[FAIL]} fail, "
            f"{c[DISCREPANCY]} discrepancies"
        )
        disc = [e for e in self.entries if e.verdict == DISCREPANCY]
        if disc:
            lines.append("")
            lines.append("Discrepancies (exact computation contradicts the cataloged claim):")
            for e in disc:
                lines.append(f"  - {e.id}: {e.statement}")
        return "\n".join(lines) + "\n"


def _entry(id_: str, statement: str, ok: bool, certificate: dict) -> ClaimEntry:
    return ClaimEntry(id_, statement, PASS if ok else FAIL, certificate)


def _comparison_entry(
    id_: str, statement: str, replayed: bool, claimed: str, oracle: str, certificate: dict
) -> ClaimEntry:
    certificate = dict(certificate)
    certificate["claimed_verdict"] = claimed
    certificate["oracle_verdict"] = oracle
    certificate["comparison"] = "AGREES" if claimed == oracle else "DISCREPANCY"
    if not replayed:
        verdict = FAIL
    else:
        verdict = PASS if claimed == oracle else DISCREPANCY
    return ClaimEntry(id_, statement, verdict, certificate)


def _random_element(rng, max_deg: int = 5, max_terms: int = 4) -> AlgebraElement:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, max_deg)
        i = rng.randint(0, d)
        terms[(i, d - i)] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return AlgebraElement(terms)


# -- algebra claims -----------------------------------------------------------


def _claim_defining_relation() -> ClaimEntry:
    f = ONE - X * Y
    checks = {
        "y*x == 1": Y * X == ONE,
        "y*(1-xy) == 0": Y * f == 0,
        "(1-xy)*x == 0": f * X == 0,
        "x*y != 1": X * Y != ONE,
    }
    return _entry(
        "alg-defining-relation",
        "yx = 1 while xy != 1, and 1 - xy is a two-sided zero divisor",
        all(checks.values()),
        {"checks": checks},
    )


def _claim_associativity() -> ClaimEntry:
    mons = [monomial(i, j) for i in range(5) for j in range(5)]
    count = 0
    for a in mons:
        for b in mons:
            ab = a * b
            for c in mons:
                if (ab * c) != (a * (b * c)):
                    return _entry(
                        "alg-associativity",
                        "multiplication is associative on monomials with exponents <= 4",
                        False,
                        {"counterexample": [a.to_json(), b.to_json(), c.to_json()]},
                    )
                count += 1
    return _entry(
        "alg-associativity",
        "multiplication is associative on monomials with exponents <= 4",
        True,
        {"triples": count},
    )


def _claim_involution(rng) -> ClaimEntry:
    ok = involution(X) == Y and involution(Y) == X and involution(ONE) == ONE
    samples = 0
    for _ in range(100):
        a, b = _random_element(rng), _random_element(rng)
        if involution(a * b) != involution(b) * involution(a):
            ok = False
            break
        if involution(involution(a)) != a:
            ok = False
            break
        samples += 1
    return _entry(
        "alg-involution",
        "x <-> y extends to an order-2 anti-automorphism",
        ok,
        {"samples": samples},
    )


def _claim_matrix_units() -> ClaimEntry:
    ok = True
    products = 0
    for i in range(6):
        for j in range(6):
            for k in range(6):
                for l in range(6):
                    expected = matrix_unit(i, l) if j == k else AlgebraElement()
                    if matrix_unit(i, j) * matrix_unit(k, l) != expected:
                        ok = False
                    products += 1
    return _entry(
        "alg-matrix-unit-law",
        "M_ij M_kl = delta_jk M_il for all indices <= 5, computed by multiplication",
        ok,
        {"products": products},
    )


def _claim_laurent(rng) -> ClaimEntry:
    ok = True
    for _ in range(100):
        a, b = _random_element(rng), _random_element(rng)
        if laurent_image(a * b) != laurent_image(a) * laurent_image(b):
            ok = False
            break
    units_killed = all(
        not laurent_image(matrix_unit(i, j)) for i in range(6) for j in range(6)
    )
    return _entry(
        "alg-laurent-quotient",
        "x -> t, y -> 1/t is multiplicative and kills every matrix unit",
        ok and units_killed,
        {"samples": 100, "matrix_units_killed": units_killed},
    )


def _claim_center(D: int) -> ClaimEntry:
    D = min(D, 6)
    basis = center_slice(D)
    ok = basis == [ONE]
    return _entry(
        "alg-center-trivial",
        "the degree window of the center is spanned by 1",
        ok,
        {"window": D, "basis": [e.to_json() for e in basis]},
    )


def _claim_border_contract() -> ClaimEntry:
    n = 16
    ok = True
    pairs = 0
    mons = [monomial(i, j) for i in range(5) for j in range(5)]
    mats = {m.terms(): to_matrix(m, n) for m in mons}
    for a in mons:
        for b in mons:
            d = a.degree + b.degree
            lhs = to_matrix(a * b, n).block(n - d)
            rhs = (mats[a.terms()] * mats[b.terms()]).block(n - d)
            if lhs != rhs:
                ok = False
            pairs += 1
    return _entry(
        "rep-truncation-border",
        "truncated shift matrices multiply correctly on the top-left block "
        "prescribed by the degree border",
        ok,
        {"dimension": n, "pairs": pairs},
    )


def _claim_diffop() -> ClaimEntry:
    inf = InfShift()
    ok = True
    checked = 0
    for deg in range(7):
        for i in range(deg + 1):
            m = monomial(i, deg - i)
            for nn in range(11):
                image = diffop_action(m, LaurentPoly({nn: 1}))
                shifted = act(inf, m, Vec.basis(nn))
                if image != LaurentPoly({k: c for k, c in shifted.coords()}):
                    ok = False
                checked += 1
    return _entry(
        "rep-diffop-agreement",
        "the action through y = H^(-1) d/dx on k[x] matches the shift module "
        "under x^n <-> b_n",
        ok,
        {"monomial_degree": 6, "basis_bound": 10, "checked": checked},
    )


# -- module claims ------------------------------------------------------------


def _claim_action_multiplicative(rng) -> ClaimEntry:
    ok = True
    inf = InfShift()
    for _ in range(100):
        a, b = _random_element(rng), _random_element(rng)
        v = random_vec(rng, max_index=8)
        if act(inf, a * b, v) != act(inf, a, act(inf, b, v)):
            ok = False
            break
        lam = rng.choice(_LAMBDAS)
        d = Vec({0: Fraction(rng.randint(-3, 3))})
        if act(Fin(lam), a * b, d) != act(Fin(lam), a, act(Fin(lam), b, d)):
            ok = False
            break
    fin_ok = all(
        act(Fin(lam), Y * X - ONE, Vec.basis(0)) == Vec.zero()
        and act(Fin(lam), X * Y, Vec.basis(0)) == Vec.basis(0)
        for lam in _LAMBDAS
    )
    return _entry(
        "mod-action-multiplicative",
        "module actions respect multiplication; xy acts as 1 on every k_lambda",
        ok and fin_ok,
        {"samples": 100, "one_dim_relations": fin_ok},
    )


def _claim_column_decomposition() -> ClaimEntry:
    res = column_intertwiner_check(3, 4)
    return _entry(
        "mod-column-decomposition",
        "b_i -> M_{i,c} identifies the shift module with each column of the socle",
        res["ok"],
        res,
    )


def _claim_shift_simplicity(rng) -> ClaimEntry:
    inf = InfShift()
    ok = True
    for _ in range(25):
        v = random_vec(rng, max_index=5)
        if not v:
            v = Vec.basis(rng.randint(0, 5))
        r = cyclic_witness(v)
        if act(inf, r, v) != Vec.basis(0):
            ok = False
            break
    return _entry(
        "mod-shift-simplicity-probe",
        "every nonzero vector of bounded support generates b_0 (and hence all "
        "of the shift module) through an explicit annihilate-then-shift element",
        ok,
        {"samples": 25, "support_bound": 5},
    )


# -- extension claims ---------------------------------------------------------


def _claim_compatibility() -> ClaimEntry:
    inf = InfShift()
    checks = {}
    lam, mu = Fraction(2), Fraction(3)
    spec = complete_delta(inf, Fin(lam), LinMap.from_cols(Fin(lam), inf, {0: Vec.basis(1)}))
    checks["shift_target: delta(y)_i = -(1/lam) delta(x)_{i+1}"] = spec.dy.col(0) == Vec(
        {0: -1 / lam}
    )
    both = complete_delta(
        Fin(mu), Fin(lam), LinMap.from_cols(Fin(lam), Fin(mu), {0: Vec({0: 7})})
    )
    checks["one_dim: delta(y) = -(1/(lam mu)) delta(x)"] = both.dy.col(0) == Vec(
        {0: Fraction(-7) / (lam * mu)}
    )
    z = complete_delta(inf, Fin(lam), LinMap.zero(Fin(lam), inf))
    checks["zero completes to zero"] = not z.dy
    return _entry(
        "ext-compatibility-forced",
        "alpha(y) delta(x) + delta(y) beta(x) = 0 determines delta(y) with the "
        "negative sign and full index range",
        all(checks.values()),
        {"checks": checks},
    )


def _claim_block_relation(rng) -> ClaimEntry:
    ok = True
    checked = 0
    for shapes in (("inf", "fin"), ("fin", "fin"), ("inf", "inf"), ("fin", "inf")):
        for _ in range(5):
            spec = random_spec(rng, *shapes)
            for _ in range(5):
                u = (
                    random_vec(rng)
                    if shapes[0] == "inf"
                    else Vec({0: Fraction(rng.randint(-3, 3))})
                )
                v = (
                    random_vec(rng)
                    if shapes[1] == "inf"
                    else Vec({0: Fraction(rng.randint(-3, 3))})
                )
                ev = ExtVector(u, v)
                if ext_act(spec, Y * X, ev) != ev:
                    ok = False
                checked += 1
    return _entry(
        "ext-block-relation",
        "the block action of every valid extension satisfies rho(y) rho(x) = id",
        ok,
        {"vectors": checked},
    )


def _claim_derivation_law(rng) -> ClaimEntry:
    ok = True
    for _ in range(20):
        spec = random_spec(rng, "inf", "fin")
        r1, r2 = _random_element(rng, 3, 2), _random_element(rng, 3, 2)
        v = Vec.basis(0)

        def delta_of(r, s=spec, vv=v):
            return ext_act(s, r, ExtVector(Vec.zero(), vv)).u

        lhs = delta_of(r1 * r2)
        rhs = act(spec.U, r1, delta_of(r2)) + delta_of(r1).scale(
            act(spec.V, r2, v).get(0)
        )
        if lhs != rhs:
            ok = False
            break
    return _entry(
        "ext-derivation-law",
        "the off-diagonal block obeys the twisted derivation rule "
        "delta(r1 r2) = alpha(r1) delta(r2) + delta(r1) beta(r2)",
        ok,
        {"samples": 20},
    )


def _claim_infinite_quotient_splits(rng) -> ClaimEntry:
    ok = True
    runs = []
    for k in range(50):
        u_shape = "inf" if k % 2 == 0 else "fin"
        spec = random_spec(rng, u_shape, "inf")
        res = split_test(spec)
        if not isinstance(res, Split):
            ok = False
            break
        witness = split_witness(spec, res)
        if _apply_y(spec, witness):
            ok = False
            break
        if not check_split_certificate(spec, res, bound=8):
            ok = False
            break
        runs.append(u_shape)
    return _entry(
        "ext-infinite-quotient-splits",
        "every extension with infinite-dimensional quotient splits, with the "
        "witness b_0 - x delta(y) b_0 annihilated by y and generating a section",
        ok,
        {"specs": len(runs), "u_shapes": {"inf": runs.count("inf"), "fin": runs.count("fin")}},
    )


def _claim_one_dim_oracle(rng) -> ClaimEntry:
    ok = True
    split_count = nonsplit_count = 0
    for _ in range(40):
        spec = random_spec(rng, "inf", "fin")
        res = split_test(spec)
        if isinstance(res, Split):
            split_count += 1
            if not check_split_certificate(spec, res, bound=max(6, spec.dx.col(0).max_index + 3)):
                ok = False
                break
        else:
            nonsplit_count += 1
            if not recheck_nonsplit(spec, res):
                ok = False
                break
    return _entry(
        "ext-one-dim-split-oracle",
        "the triangular section solver and an independent dense elimination "
        "agree on every one-dimensional-quotient extension tested",
        ok,
        {"split": split_count, "nonsplit": nonsplit_count},
    )


def _claim_coboundary_probe() -> ClaimEntry:
    results = []
    replayed = True
    oracle_all_split = True
    for lam in _LAMBDAS:
        V = Fin(lam)
        inf = InfShift()
        u = Vec.basis(0)
        dx_col = act(inf, X, u) - u.scale(lam)
        spec = complete_delta(inf, V, LinMap.from_cols(V, inf, {0: dx_col}))
        res = split_test(spec)
        if isinstance(res, Split):
            if not check_split_certificate(spec, res, bound=5):
                replayed = False
            if res.seed != -u:
                replayed = False
            results.append({"lambda": _frac_text(lam), "oracle": "split"})
        else:
            oracle_all_split = False
            if not recheck_nonsplit(spec, res):
                replayed = False
            results.append({"lambda": _frac_text(lam), "oracle": "nonsplit"})
    oracle = "split" if oracle_all_split else "nonsplit"
    return _comparison_entry(
        "ext-coboundary-probe",
        "the coboundary input delta(x) = (alpha(x) - lambda) e_0 is nonzero, so "
        "the cataloged criterion 'nonsplit iff delta is nonzero' predicts "
        "nonsplit; the exact section solver decides",
        replayed,
        claimed="nonsplit",
        oracle=oracle,
        certificate={"probes": results, "section_seed": "-e_0"},
    )


def _iso_pool() -> list[ExtSpec]:
    inf = InfShift()
    pool = []
    for lam in (Fraction(1), Fraction(2)):
        V = Fin(lam)
        columns = [
            Vec(),
            Vec({0: 1}),
            Vec({0: 2}),
            Vec({1: 1}),
            Vec({0: 1, 1: 1}),
            Vec({2: 1, 0: -1}),
            Vec({1: 1, 0: -lam}),  # coboundary of e_0
            Vec({0: 5}),
            Vec({3: 1}),
            Vec({1: 1, 0: -1}),
        ]
        pool.extend(
            complete_delta(inf, V, LinMap.from_cols(V, inf, {0: col}))
            for col in columns
        )
    return pool


def _claim_iso_equivalence_relation() -> ClaimEntry:
    pool = _iso_pool()
    n = len(pool)
    ok = True
    iso_table: dict[tuple[int, int], Iso | None] = {}
    for i in range(n):
        for j in range(n):
            res = iso_test(pool[i], pool[j])
            if isinstance(res, Iso):
                if not check_iso_certificate(pool[i], pool[j], res):
                    ok = False
                iso_table[(i, j)] = res
            else:
                iso_table[(i, j)] = None
    for i in range(n):
        if iso_table[(i, i)] is None:
            ok = False
    for i in range(n):
        for j in range(n):
            if (iso_table[(i, j)] is None) != (iso_table[(j, i)] is None):
                ok = False
    composed = 0
    for i in range(n):
        for j in range(n):
            fij = iso_table[(i, j)]
            if fij is None:
                continue
            for k in range(n):
                fjk = iso_table[(j, k)]
                if fjk is None:
                    continue
                if iso_table[(i, k)] is None:
                    ok = False
                    continue
                comp = Iso(
                    a=fij.a * fjk.a,
                    b=fij.b * fjk.b,
                    w=fij.w.scale(fjk.a) + fjk.w.scale(fij.b),
                )
                if not check_iso_certificate(pool[i], pool[k], comp):
                    ok = False
                composed += 1
    return _entry(
        "ext-iso-equivalence-relation",
        "the intertwiner oracle is reflexive, symmetric and transitive on a "
        "pool of 20 one-dimensional-quotient extensions, with composed "
        "certificates replaying",
        ok,
        {"pool": n, "compositions": composed},
    )


def _claim_iso_proportionality() -> ClaimEntry:
    inf = InfShift()
    V = Fin(Fraction(1))
    mk = lambda col: complete_delta(inf, V, LinMap.from_cols(V, inf, {0: col}))
    a = mk(Vec({0: 1}))
    b = mk(Vec({1: 1}))
    res = iso_test(a, b)
    replayed = isinstance(res, Iso) and check_iso_certificate(a, b, res)
    oracle = "isomorphic" if isinstance(res, Iso) else "not isomorphic"
    cert = {
        "delta_x_left": "e_0",
        "delta_x_right": "e_1",
        "proportional": False,
    }
    if isinstance(res, Iso):
        cert["intertwiner"] = {
            "a": _frac_text(res.a),
            "b": _frac_text(res.b),
            "w": {str(k): _frac_text(c) for k, c in res.w.coords()},
        }
    return _comparison_entry(
        "ext-iso-proportionality",
        "the cataloged criterion says e_0 and e_1 deltas are isomorphic only "
        "if proportional; the intertwiner search decides",
        replayed,
        claimed="not isomorphic",
        oracle=oracle,
        certificate=cert,
    )


def _claim_trichotomy_grid() -> ClaimEntry:
    inf = InfShift()
    ok = True
    comparisons = {"AGREES": 0, "DISCREPANCY": 0}
    grid_ok = True
    for lam in _LAMBDAS:
        for lam2 in _LAMBDAS:
            for d in (0, 1, 5):
                U, V = Fin(lam), Fin(lam2)
                spec = complete_delta(U, V, LinMap.from_cols(V, U, {0: Vec({0: d})}))
                rep = classify(spec)
                comparisons[rep.comparison] += 1
                expected_split = lam != lam2 or d == 0
                if (rep.oracle_verdict == "split") != expected_split:
                    grid_ok = False
    # spot checks for the other two cases
    rep_i = classify(complete_delta(Fin(Fraction(1)), inf, LinMap.zero(inf, Fin(Fraction(1)))))
    rep_ii = classify(
        complete_delta(inf, Fin(Fraction(1)), LinMap.from_cols(Fin(Fraction(1)), inf, {0: Vec.basis(0)}))
    )
    if rep_i.case != "i" or rep_i.comparison != "AGREES":
        ok = False
    if rep_ii.case != "ii" or rep_ii.oracle_verdict != "nonsplit" or rep_ii.comparison != "AGREES":
        ok = False
    # equivalence across nonsplit one-dimensional extensions
    equiv_ok = True
    nonsplit = []
    for lam in _LAMBDAS:
        for d in (1, 5):
            U = Fin(lam)
            nonsplit.append(
                (lam, complete_delta(U, U, LinMap.from_cols(U, U, {0: Vec({0: d})})))
            )
    for lam_a, sa in nonsplit:
        for lam_b, sb in nonsplit:
            if equivalence_test(sa, sb) != (lam_a == lam_b):
                equiv_ok = False
    return _entry(
        "ext-trichotomy-grid",
        "two one-dimensional simples: split iff the scalars differ or delta "
        "is zero, and nonsplit extensions are equivalent iff the scalars agree",
        ok and grid_ok and equiv_ok,
        {
            "lambdas": [_frac_text(l) for l in _LAMBDAS],
            "deltas": [0, 1, 5],
            "comparisons": comparisons,
            "equivalence_grid_ok": equiv_ok,
        },
    )


# -- ideal claims -------------------------------------------------------------


def _claim_ideal_classification() -> ClaimEntry:
    f = ONE - X * Y
    cases = {
        "<1-xy> -> socle": ideal_classify([f]).kind == "socle",
        "<1-xy, x-1> -> pair": ideal_classify([f, X - ONE]).kind == "pair",
        "<1-xy, x> -> whole": ideal_classify([f, X]).kind == "whole",
        "<x> -> whole": ideal_classify([X]).kind == "whole",
        "<> -> zero": ideal_classify([]).kind == "zero",
        "<(x-1)(x-2)> -> pair": ideal_classify([(X - ONE) * (X - ONE.scale(2))]).kind
        == "pair",
    }
    pair = ideal_classify([f, X - ONE])
    cases["pair normal form is monic with nonzero constant term"] = (
        pair.f is not None and pair.f.coeff(0) != 0 and pair.f.coeff(pair.f.max_exp) == 1
    )
    return _entry(
        "ideal-classification",
        "generated two-sided ideals normalize to 0, the socle, the whole ring, "
        "or the pair <1-xy, f> with f monic and not a monomial",
        all(cases.values()),
        {"cases": cases},
    )


def _claim_annihilators(D: int, cap: int) -> ClaimEntry:
    ok = True
    dims = {}
    for lam in _LAMBDAS:
        ann = annihilator(Fin(lam), D)
        gen = stable_ideal_slice(PrimeId.max(lam).gens(), D, cap)
        dims[_frac_text(lam)] = ann.dim
        if ann.rows != gen.rows:
            ok = False
    shift_zero = annihilator(InfShift(), 5).dim == 0
    return _entry(
        "ideal-annihilators",
        "the annihilator of k_lambda is the maximal prime <1-xy, x-lambda> "
        "(kernel route equals generated route) and the shift module is faithful",
        ok and shift_zero,
        {"window": D, "kernel_dims": dims, "shift_module_faithful": shift_zero},
    )


def _claim_socle_slice(D: int, cap: int) -> ClaimEntry:
    sl = stable_ideal_slice([ONE - X * Y], D, cap)
    expected = sum(1 for i in range(D + 1) for j in range(D + 1) if i + j + 2 <= D)
    members = all(
        sl.contains(matrix_unit(i, j))
        for i in range(D + 1)
        for j in range(D + 1)
        if i + j + 2 <= D
    )
    return _entry(
        "ideal-socle-slice",
        "the window slice of the socle is exactly the span of the matrix "
        "units that fit in the window",
        sl.dim == expected and members,
        {"window": D, "dim": sl.dim, "expected_dim": expected, "slack": sl.slack},
    )


def _claim_prime_identities(D: int, cap: int) -> list[ClaimEntry]:
    pairs = [(1, 2), (1, -1), (2, Fraction(1, 2))]
    sub_ok = True
    chain_ok = True
    certs = []
    for lam, lam2 in pairs:
        res = prime_identities_check(lam, lam2, D, cap)
        certs.append(res)
        sub_ok = sub_ok and res["socle_chain_ok"] and res["meet_equals_product"]
        chain_ok = chain_ok and res["full_chain_ok"]
    entries = [
        _entry(
            "ideal-socle-identities",
            "F = F^2 = F meet P_lam = F P_lam = P_lam F, and distinct maximal "
            "primes satisfy P meet P' = P P'",
            sub_ok,
            {"pairs": certs},
        ),
        _comparison_entry(
            "ideal-full-chain",
            "the cataloged display chains all seven expressions together, "
            "forcing P meet P' = F; the slice computation decides",
            replayed=sub_ok,
            claimed="chain holds",
            oracle="chain holds" if chain_ok else "chain breaks at P meet P'",
            certificate={"witness": certs[0]["cross_witness"], "dims": certs[0]["dims"]},
        ),
    ]
    return entries


def _claim_link_graph(D: int, cap: int) -> ClaimEntry:
    g = link_graph([1, 2], D, cap)
    edges = [(s.label, t.label) for s, t, _ in g.edges]
    expected = [("P_1", "P_1"), ("P_2", "P_2")]
    replay = all(link_test(s, t, D, cap)[0] for s, t, _ in g.edges)
    return _entry(
        "ideal-link-graph",
        "the graph of links has exactly the self-loops at the maximal primes; "
        "(0) and F are isolated (window-verified)",
        edges == expected and replay,
        {"window": D, "vertices": [v.label for v in g.vertices], "edges": edges},
    )


def _claim_main_lemma(D: int, cap: int) -> list[ClaimEntry]:
    inf = InfShift()
    F1 = Fin(Fraction(1))
    case_ii = complete_delta(inf, F1, LinMap.from_cols(F1, inf, {0: Vec.basis(0)}))
    case_iii = complete_delta(F1, F1, LinMap.from_cols(F1, F1, {0: Vec({0: 1})}))
    r2 = jategaonkar_check(case_ii, D, cap)
    r3 = jategaonkar_check(case_iii, D, cap)
    entries = [
        _comparison_entry(
            "ideal-main-lemma-shift-case",
            "for the nonsplit extension of the shift module by k_1, neither "
            "annihilator alternative (containment with P E = 0, or a link "
            "P ~> Q) holds, so the noetherian Main Lemma fails for R",
            replayed=r2["annihilators_match_primes"],
            claimed="neither alternative",
            oracle="neither alternative" if r2["neither"] else "an alternative holds",
            certificate=r2,
        ),
        _comparison_entry(
            "ideal-main-lemma-one-dim-case",
            "the cataloged claim says neither alternative holds for the "
            "nonsplit self-extension of k_1; the slice computation decides "
            "(the self-link P_1 ~> P_1 is alternative (ii))",
            replayed=r3["annihilators_match_primes"],
            claimed="neither alternative",
            oracle="neither alternative" if r3["neither"] else "alternative (ii) holds",
            certificate=r3,
        ),
    ]
    return entries


def _claim_lann_chain() -> ClaimEntry:
    res = lann_chain_check(4, 8)
    return _entry(
        "ideal-lann-chain",
        "the left annihilators of x^n strictly ascend (n = 1..4), matching the "
        "span of matrix units with column index below n; R is not Goldie",
        res["ok"],
        res,
    )


def _claim_essential(rng) -> ClaimEntry:
    ok = True
    for _ in range(100):
        e = _random_element(rng)
        if not e:
            continue
        w = essential_check(e)
        if w.sandwich != matrix_unit(0, 0).scale(w.value) or not w.value:
            ok = False
            break
    return _entry(
        "ideal-essential-socle",
        "for every nonzero r the sandwich M_{0,p} r M_{q,0} is a nonzero "
        "multiple of M_{0,0}, so the socle meets every nonzero ideal",
        ok,
        {"samples": 100, "degree_bound": 5},
    )


# -- assembly -----------------------------------------------------------------


def run_verify(config: RunConfig = RunConfig()) -> ClaimReport:
    """Run the full claim suite deterministically for the given config."""
    rng = random.Random(config.seed)
    D = config.max_degree
    cap = config.slack_cap
    entries: list[ClaimEntry] = [
        _claim_defining_relation(),
        _claim_associativity(),
        _claim_involution(rng),
        _claim_matrix_units(),
        _claim_laurent(rng),
        _claim_center(D),
        _claim_border_contract(),
        _claim_diffop(),
        _claim_action_multiplicative(rng),
        _claim_column_decomposition(),
        _claim_shift_simplicity(rng),
        _claim_compatibility(),
        _claim_block_relation(rng),
        _claim_derivation_law(rng),
        _claim_infinite_quotient_splits(rng),
        _claim_one_dim_oracle(rng),
        _claim_coboundary_probe(),
        _claim_iso_equivalence_relation(),
        _claim_iso_proportionality(),
        _claim_trichotomy_grid(),
        _claim_ideal_classification(),
        _claim_annihilators(D, cap),
        _claim_socle_slice(D, cap),
        *_claim_prime_identities(D, cap),
        _claim_link_graph(D, cap),
        *_claim_main_lemma(D, cap),
        _claim_lann_chain(),
        _claim_essential(rng),
    ]
    entries.sort(key=lambda e: e.id)
    return ClaimReport(config, entries)


def verify_link_graph(config: RunConfig = RunConfig()):
    """The link graph used by the report, for DOT output."""
    return link_graph([1, 2], config.max_degree, config.slack_cap)
