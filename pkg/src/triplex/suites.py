"""Verification suites: each runs a family of identity checks over
exhaustive basis ranges plus seeded random samples and returns a
schema-stable report."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct

from . import hopf
from .envelope import EnvelopingAlgebra
from .exactlin import SparseVector, echelonize, mat_transpose, mat_mul
from .lts import (InvalidStructure, check_axioms, endo_theorem_check,
                  lambda_map, lie_closure, r_generators, simplicity_certificate,
                  standard_embedding, tau_commutator_check, tau_map,
                  trace_identity_check, unit_vector)

SUITE_NAMES = ("axioms", "embedding", "endo", "simple", "pbw", "jordan",
               "lemma", "expansion", "s2", "hopf", "mainthm", "all")


@dataclass
class SuiteReport:
    suite: str
    records: list = field(default_factory=list)
    timing: float = 0.0

    def add(self, identifier, params, verdict, witness=None):
        self.records.append({
            "id": identifier,
            "params": params,
            "verdict": "pass" if verdict else "fail",
            "witness": witness,
        })

    @property
    def ok(self):
        return all(r["verdict"] == "pass" for r in self.records)

    def finish(self):
        self.records.sort(key=lambda r: (r["id"], str(r["params"])))
        return self

    def to_dict(self, machine=False):
        out = {
            "suite": self.suite,
            "status": "pass" if self.ok else "fail",
            "checks": len(self.records),
            "records": self.records,
        }
        if not machine:
            out["timing_seconds"] = round(self.timing, 3)
        return out


def default_cap(system):
    return 6 if system.dim <= 2 else 4


def _seeded_elements(alg, seed, count, augmentation):
    """Deterministic random elements with coefficients in {-3,...,3}.

    Supported on monomials of degree 1 and 2; augmentation elements have
    no constant term, the others get a nonzero one.
    """
    rng = random.Random(seed)
    monomials = [v for v in alg.exponents if 1 <= sum(v) <= 2]
    out = []
    while len(out) < count:
        x = alg.zero()
        for v in monomials:
            c = rng.randint(-3, 3)
            if c:
                x = x + Fraction(c) * alg.monomial(v)
        if not augmentation:
            x = x + Fraction(rng.choice([1, 2, 3])) * alg.one()
        if not x.is_zero():
            out.append(x)
    return out


def suite_axioms(system, alg_cache, N, seed):
    rep = SuiteReport("axioms")
    ax = check_axioms(system)
    rep.add("axiom1_alternating", {}, ax.alternating.ok, ax.alternating.counterexample)
    rep.add("axiom2_cyclic", {}, ax.cyclic.ok, ax.cyclic.counterexample)
    rep.add("axiom3_derivation", {}, ax.derivation.ok, ax.derivation.counterexample)
    return rep


def suite_embedding(system, alg_cache, N, seed):
    rep = SuiteReport("embedding")
    d = system.dim
    e = lambda i: unit_vector(d, i)
    try:
        emb = standard_embedding(system)
    except InvalidStructure as exc:
        rep.add("embedding_build", {}, False, str(exc))
        return rep
    rep.add("embedding_build", {"dim": emb.dim, "inn_dim": emb.inn_dim}, True)
    tr = trace_identity_check(system, emb)
    rep.add("trace_identity", {}, tr.ok, tr.failures or None)
    # adjointness of R_{a,b} and R_{b,a} under the restricted Killing form
    adj_ok = True
    for i, j in iproduct(range(d), repeat=2):
        rab = system.r_op(e(i), e(j)).matrix
        rba = system.r_op(e(j), e(i)).matrix
        if mat_mul(mat_transpose(rab), emb.killing_t) != mat_mul(emb.killing_t, rba):
            adj_ok = False
            break
    rep.add("killing_adjointness", {}, adj_ok)
    # rank-one tau maps and the commutator rule for K-skew operators
    rng = random.Random(seed)
    tau_ok = comm_ok = True
    for _ in range(10):
        x = tuple(Fraction(rng.randint(-3, 3)) for _ in range(d))
        y = tuple(Fraction(rng.randint(-3, 3)) for _ in range(d))
        m = tau_map(emb, x, y).matrix
        pivots = echelonize([SparseVector.from_dense(r) for r in m], d)
        if pivots.dim > 1:
            tau_ok = False
        u = tuple(Fraction(rng.randint(-3, 3)) for _ in range(d))
        v = tuple(Fraction(rng.randint(-3, 3)) for _ in range(d))
        dmat = lambda_map(emb, u, v).matrix
        if not tau_commutator_check(emb, dmat, x, y):
            comm_ok = False
    rep.add("tau_rank_le_one", {"samples": 10, "seed": seed}, tau_ok)
    rep.add("tau_commutator_rule", {"samples": 10, "seed": seed}, comm_ok)
    return rep


def suite_endo(system, alg_cache, N, seed):
    rep = SuiteReport("endo")
    gens = r_generators(system)
    if all(all(not c for row in g for c in row) for g in gens):
        rep.add("lie_closure_full", {"closure_dim": 0, "expected": system.dim ** 2},
                False)
        return rep
    space, _ = lie_closure(gens)
    rep.add("lie_closure_full",
            {"closure_dim": space.dim, "expected": system.dim ** 2},
            space.dim == system.dim ** 2)
    return rep


def suite_simple(system, alg_cache, N, seed):
    rep = SuiteReport("simple")
    cert = simplicity_certificate(system)
    rep.add("simplicity_certificate",
            {"verdict": cert.verdict, "envelope_dim": cert.envelope_dim},
            cert.verdict != "inconclusive")
    return rep


def suite_pbw(system, alg_cache, N, seed):
    rep = SuiteReport("pbw")
    alg = alg_cache(N)
    for n, dim in enumerate(alg.degree_dims):
        rep.add(f"pbw_level_{n}", {"dim": dim}, True)
    rep.add("pbw_certificate", {"cap": N, "relation_span_dim": alg.relspan_dim}, True)
    return rep


def suite_jordan(system, alg_cache, N, seed):
    rep = SuiteReport("jordan")
    alg = alg_cache(N)
    d = alg.d
    ok = True
    count = 0
    for a in range(d):
        ga = alg.generator(a)
        for v in alg.exponents:
            if sum(v) > N - 2:
                continue
            count += 1
            if not alg.check_jordan(ga, alg.monomial(v)):
                ok = False
                rep.add("jordan_operator_identity", {"a": a, "x": list(v)}, False)
    rep.add("jordan_exhaustive", {"cases": count}, ok)
    return rep


def suite_lemma(system, alg_cache, N, seed):
    rep = SuiteReport("lemma")
    alg = alg_cache(N)
    d = alg.d
    for c, a, b in iproduct(range(d), repeat=3):
        for n in range(0, N - 1):
            ok = alg.check_lemma_derivation(c, a, b, n)
            if not ok:
                rep.add("lemma_residue", {"c": c, "a": a, "b": b, "n": n}, False)
    rep.add("lemma_exhaustive", {"n_max": N - 2, "triples": d ** 3}, rep.ok)
    return rep


def suite_expansion(system, alg_cache, N, seed):
    rep = SuiteReport("expansion")
    alg = alg_cache(N)
    d = alg.d
    for c, a, b in iproduct(range(d), repeat=3):
        for n in range(0, N - 1):
            if not alg.check_assoc_expansion(c, a, b, n):
                rep.add("associator_expansion", {"c": c, "a": a, "b": b, "n": n}, False)
    rep.add("expansion_exhaustive", {"n_max": N - 2, "triples": d ** 3}, rep.ok)
    return rep


def suite_s2(system, alg_cache, N, seed):
    rep = SuiteReport("s2")
    alg = alg_cache(N)
    try:
        results = alg.s2_identity_suite(N - 3)
    except ValueError as exc:
        rep.add("s2_suite", {}, False, str(exc))
        return rep
    for n, prop_ok, eigen_ok in results:
        rep.add("s2_proposition", {"n": n}, prop_ok)
        rep.add("s2_eigenvalue", {"n": n}, eigen_ok)
    return rep


def suite_hopf(system, alg_cache, N, seed):
    rep = SuiteReport("hopf")
    alg = alg_cache(N)
    deg = min(3, N)
    co = hopf.check_coalgebra(alg, deg)
    rep.add("coalgebra_laws", {"degree": deg}, co.ok, co.failures or None)
    # S is an involutive automorphism fixing 1 with eps o S = eps
    s_ok = True
    for v in alg.exponents:
        x = alg.monomial(v)
        if hopf.s_map(hopf.s_map(x)) != x or hopf.counit(hopf.s_map(x)) != hopf.counit(x):
            s_ok = False
    rng = random.Random(seed)
    for _ in range(20):
        vx = rng.choice(alg.exponents)
        vy = rng.choice(alg.exponents)
        if sum(vx) + sum(vy) > N:
            continue
        x, y = alg.monomial(vx), alg.monomial(vy)
        if hopf.s_map(x * y) != hopf.s_map(x) * hopf.s_map(y):
            s_ok = False
    rep.add("s_map_automorphism", {"seed": seed}, s_ok)
    div_ok = True
    div_count = 0
    for vx in alg.exponents:
        for vy in alg.exponents:
            if 2 * sum(vx) + sum(vy) > N:
                continue
            div_count += 1
            res = hopf.check_divisions(alg, alg.monomial(vx), alg.monomial(vy))
            if not res.ok:
                div_ok = False
                rep.add("division_identities", {"x": list(vx), "y": list(vy)},
                        False, res.failures)
    rep.add("division_exhaustive", {"cases": div_count}, div_ok)
    weak_ok = True
    weak_count = 0
    for vx in alg.exponents:
        for vy in alg.exponents:
            for vz in alg.exponents:
                if sum(vx) + sum(vy) + sum(vz) > N:
                    continue
                weak_count += 1
                if not hopf.check_weak_assoc(alg, alg.monomial(vx),
                                             alg.monomial(vy), alg.monomial(vz)):
                    weak_ok = False
    rep.add("weak_associativity_exhaustive", {"cases": weak_count}, weak_ok)
    k = min(4, N)
    prim = hopf.primitives(alg, k)
    t_span = echelonize([SparseVector.unit(alg.exp_index[v], alg.nf_size)
                         for v in alg.exponents if sum(v) == 1], alg.nf_size)
    rep.add("primitives_equal_t", {"degree": k, "dim": prim.dim}, prim == t_span)
    return rep


def suite_mainthm(system, alg_cache, N, seed):
    rep = SuiteReport("mainthm")
    alg = alg_cache(N)
    aug = alg.augmentation_ideal()

    def inside_aug(sub):
        return sub.sum(aug).dim == aug.dim

    for idx, g in enumerate([alg.generator(i) for i in range(alg.d)]):
        ic = alg.right_ideal_closure([g])
        ok = (inside_aug(ic.subspace) and not ic.contains_one
              and (ic.meets_t_dim > 0 or ic.stabilization_degree is not None))
        rep.add("closure_of_generator", {"generator": idx,
                                         "per_degree": ic.per_degree_dims,
                                         "meets_t": ic.meets_t_dim,
                                         "stabilization": ic.stabilization_degree}, ok)
    aug_samples = _seeded_elements(alg, seed, 20, augmentation=True)
    for idx, x in enumerate(aug_samples):
        ic = alg.right_ideal_closure([x])
        ok = (inside_aug(ic.subspace) and not ic.contains_one
              and (ic.meets_t_dim > 0 or ic.stabilization_degree is not None))
        rep.add("closure_of_augmentation_element",
                {"sample": idx, "meets_t": ic.meets_t_dim,
                 "stabilization": ic.stabilization_degree}, ok)
    unit_samples = _seeded_elements(alg, seed + 1, 20, augmentation=False)
    for idx, x in enumerate(unit_samples):
        ic = alg.right_ideal_closure([x])
        rep.add("closure_of_counit_nonzero_element", {"sample": idx},
                ic.contains_one)
    gens = [alg.monomial(v) for v in alg.exponents if sum(v) >= 1]
    ic = alg.right_ideal_closure(gens)
    rep.add("augmentation_closure_stable",
            {"dim": ic.subspace.dim, "expected": aug.dim},
            ic.subspace == aug)
    return rep


_SUITES = {
    "axioms": suite_axioms,
    "embedding": suite_embedding,
    "endo": suite_endo,
    "simple": suite_simple,
    "pbw": suite_pbw,
    "jordan": suite_jordan,
    "lemma": suite_lemma,
    "expansion": suite_expansion,
    "s2": suite_s2,
    "hopf": suite_hopf,
    "mainthm": suite_mainthm,
}


def run_suite(name, system, N=None, seed=0, max_monomials=200_000):
    """Run one named suite (or "all") and return its SuiteReport.

    Deterministic given (name, system, N, seed).
    """
    if name not in SUITE_NAMES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    N = N if N is not None else default_cap(system)
    cache = {}

    def alg_cache(cap):
        if cap not in cache:
            cache[cap] = EnvelopingAlgebra(system, cap, max_monomials)
        return cache[cap]

    start = time.monotonic()
    if name == "all":
        names = [n for n in SUITE_NAMES if n not in ("all", "s2")]
        if system.dim == 2:
            names.append("s2")
        combined = SuiteReport("all")
        for n in sorted(names):
            sub = _SUITES[n](system, alg_cache, N, seed).finish()
            for r in sub.records:
                combined.records.append({**r, "id": f"{n}.{r['id']}"})
        combined.finish()
        combined.timing = time.monotonic() - start
        return combined
    rep = _SUITES[name](system, alg_cache, N, seed).finish()
    rep.timing = time.monotonic() - start
    return rep
