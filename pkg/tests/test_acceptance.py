"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` to see the summary lines.
"""

import functools
import itertools

import naive
from artifact.duality import (
    _is_indecomposable,
    almost_split_sequence,
    determined_epi,
    right_almost_split_audit,
    verify_ar_duality_inj,
    verify_ar_duality_proj,
    verify_defect_formula,
)
from artifact.fixtures import all_fixtures, extension_sequences, fixture, random_sequences
from artifact.functors import defects, ext1, is_split
from artifact.modrep import (
    ShortExactSequence,
    direct_sum,
    is_isomorphic,
    projective_at,
    projective_cover,
)
from artifact.stable import (
    ar_translate_classical,
    dual_of_gamma,
    stable_hom_inj,
    stable_hom_proj,
    stable_isomorphism,
    tau_general,
    transpose,
)


def _line(capsys, number, ok, text):
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}")


@functools.lru_cache(maxsize=None)
def fixtures():
    return all_fixtures()


@functools.lru_cache(maxsize=None)
def sequences(index):
    fx = fixtures()[index]
    return extension_sequences(fx) + random_sequences(fx, count=20, seed=0)


def _non_projective(c):
    return c.dim and not projective_cover(c).is_isomorphism()


# ---------------------------------------------------------------------------


def test_criterion_1_ar_duality_all_pairs(capsys):
    pairs = failures = 0
    for fx in fixtures():
        mods = fx.indecomposables
        for c, x in itertools.product(mods, repeat=2):
            a = verify_ar_duality_inj(c, x, others=mods)
            b = verify_ar_duality_proj(c, x, others=mods)
            pairs += 1
            if not (a.passed and b.passed and a.lhs_dim == a.rhs_dim and b.lhs_dim == b.rhs_dim):
                failures += 1
    ok = failures == 0 and pairs >= 200
    _line(capsys, 1, ok, f"AR duality (inj + proj, invertible witness, naturality) on {pairs} pairs, {failures} failures")
    assert ok


def test_criterion_2_defect_formula(capsys):
    checks = failures = 0
    for k, fx in enumerate(fixtures()):
        for seq in sequences(k):
            for c in fx.indecomposables:
                r = verify_defect_formula(seq, c)
                checks += 1
                snake = (r.details["snake_coker"], r.details["snake_ker"], r.details["snake_delta_rank"])
                if not (r.passed and r.lhs_dim == r.rhs_dim and len(set(snake)) == 1):
                    failures += 1
    ok = failures == 0
    _line(capsys, 2, ok, f"defect formula with snake audit on {checks} (sequence, c) checks, {failures} failures")
    assert ok


def test_criterion_3_transpose_duality(capsys):
    checked = failures = 0
    for fx in fixtures():
        mods = fx.indecomposables
        for c in mods:
            trtr = transpose(transpose(c).tr).tr
            iso = stable_isomorphism(trtr, c)
            dims_ok = all(stable_hom_proj(trtr, x).dim == stable_hom_proj(c, x).dim for x in mods)
            dims_ok = dims_ok and all(stable_hom_proj(x, trtr).dim == stable_hom_proj(x, c).dim for x in mods)
            checked += 1
            if iso is None or not dims_ok:
                failures += 1
    ok = failures == 0
    _line(capsys, 3, ok, f"Tr Tr c stably isomorphic to c with witness for {checked} modules, {failures} failures")
    assert ok


def test_criterion_4_general_translate(capsys):
    checked = failures = 0
    for fx in fixtures():
        mods = fx.indecomposables
        for c in mods:
            g = tau_general(c, dual_of_gamma(c)).tau
            t = ar_translate_classical(c)
            iso = stable_isomorphism(g, t, "inj")
            dims_ok = all(stable_hom_inj(x, g).dim == stable_hom_inj(x, t).dim for x in mods)
            checked += 1
            if iso is None or not dims_ok:
                failures += 1
    ok = failures == 0
    _line(capsys, 4, ok, f"tau_c(D Gamma) ~ D Tr c modulo injectives for {checked} modules, {failures} failures")
    assert ok


def test_criterion_5_almost_split(capsys):
    checked = failures = 0
    for fx in fixtures():
        mods = fx.indecomposables
        for c in mods:
            if not _non_projective(c):
                continue
            seq = almost_split_sequence(c)
            audit = right_almost_split_audit(seq, mods)
            checked += 1
            if is_split(seq) or not (_is_indecomposable(seq.left) and _is_indecomposable(seq.right)) or not audit.passed:
                failures += 1
    known = True
    for p in (None, 5):
        f1, f2 = fixture("F1", p).modules, fixture("F2", p).modules
        s = almost_split_sequence(f1["S"])
        known &= is_isomorphic(s.left, f1["S"]) and is_isomorphic(s.middle, f1["L"])
        s = almost_split_sequence(f2["S1"])
        known &= is_isomorphic(s.left, f2["S2"]) and is_isomorphic(s.middle, f2["P1"])
    ok = failures == 0 and known
    _line(capsys, 5, ok, f"almost split sequences for {checked} non-projectives, known F1/F2 answers {known}")
    assert ok


def test_criterion_6_determined_epi(capsys):
    pairs = failures = 0
    for fx in fixtures():
        for c, x in itertools.product(fx.indecomposables, repeat=2):
            d = determined_epi(c, x)
            pairs += 1
            if not (d.factorization_ok and d.minimal):
                failures += 1
    ok = failures == 0
    _line(capsys, 6, ok, f"determined epimorphisms (biconditional + minimality) on {pairs} pairs, {failures} failures")
    assert ok


# ---------------------------------------------------------------------------
# criterion 7: the dense oracle


def _to_naive(A, kind, m):
    F = m.field
    arrows = {a[0]: F.to_rows(m.arrow_matrix(a[0])) for a in m.algebra.quiver.arrows}
    return naive.module_from_blocks(A, kind, m.dims, arrows)


def _rows(f):
    return f.field.to_rows(f.full_matrix())


def _oracle_mismatches(kind, p):
    fx = fixture(kind, p)
    A = naive.algebra_for(kind, p)
    mods = fx.indecomposables
    nm = {id(m): _to_naive(A, kind, m) for m in mods}
    ndtr = {id(c): naive.dtr(nm[id(c)]) for c in mods}
    bad = []
    compared = 0

    def same(label, got, want):
        nonlocal compared
        compared += 1
        if got != want:
            bad.append(f"{fx.name} {label}: main {got}, oracle {want}")

    for c, x in itertools.product(mods, repeat=2):
        nc, nx = nm[id(c)], nm[id(x)]
        # criterion 1
        a = verify_ar_duality_inj(c, x)
        b = verify_ar_duality_proj(c, x)
        same(f"inj lhs ({c.name},{x.name})", a.lhs_dim, naive.ext1_dim(nc, nx))
        same(f"inj rhs ({c.name},{x.name})", a.rhs_dim, naive.stable_hom_dim_inj(nx, ndtr[id(c)]))
        same(f"proj lhs ({c.name},{x.name})", b.lhs_dim, naive.stable_hom_dim_proj(nc, nx))
        same(f"proj rhs ({c.name},{x.name})", b.rhs_dim, naive.ext1_dim(nx, ndtr[id(c)]))
        # criterion 3
        trtr = transpose(transpose(c).tr).tr
        same(f"stable Hom(TrTr {c.name},{x.name})", stable_hom_proj(trtr, x).dim, naive.stable_hom_dim_proj(nc, nx))
        # criterion 4
        g = tau_general(c, dual_of_gamma(c)).tau
        same(f"stable Hom({x.name}, tau_c)", stable_hom_inj(x, g).dim, naive.stable_hom_dim_inj(nx, ndtr[id(c)]))
        # criterion 6
        d = determined_epi(c, x)
        same(f"Hom({c.name},{x.name})", d.details["hom_dim"], naive.hom_dim(nc, nx))
        same(f"stable Hom({c.name},{x.name})", d.details["stable_dim"], naive.stable_hom_dim_proj(nc, nx))
        pi = d.pi
        npi = _rows(pi)
        XC = _to_naive(A, kind, pi.source)
        through = naive.compose_span_dim([naive.matmul(npi, h, A.K) for h in naive.hom(nc, XC)], A.K)
        same(f"maps {c.name}->{x.name} through pi", through, naive.hom_dim(nc, nx) - naive.stable_hom_dim_proj(nc, nx))
    # criterion 2
    seqs = extension_sequences(fx) + random_sequences(fx, count=20, seed=0)
    for s_idx, seq in enumerate(seqs):
        X, Y, Z = (_to_naive(A, kind, m) for m in (seq.left, seq.middle, seq.right))
        iota, pi = _rows(seq.iota), _rows(seq.pi)
        for c in mods:
            r = verify_defect_formula(seq, c)
            same(f"seq {s_idx} contra defect at {c.name}", r.lhs_dim, naive.contra_defect_dim(nm[id(c)], iota, pi, X, Y, Z))
            same(f"seq {s_idx} cov defect at tau {c.name}", r.rhs_dim, naive.cov_defect_dim(ndtr[id(c)], iota, pi, X, Y))
    # criterion 5
    for c in mods:
        if not _non_projective(c):
            continue
        seq = almost_split_sequence(c)
        left = _to_naive(A, kind, seq.left)
        same(f"stable End(tau {c.name})", stable_hom_inj(seq.left, seq.left).dim,
             naive.stable_hom_dim_inj(ndtr[id(c)], ndtr[id(c)]))
        same(f"Ext(c, tau {c.name})", ext1(c, seq.left).dim, naive.ext1_dim(nm[id(c)], left))
        same(f"AR defect at {c.name}", 1,
             naive.contra_defect_dim(nm[id(c)], _rows(seq.iota), _rows(seq.pi), left,
                                     _to_naive(A, kind, seq.middle), nm[id(c)]))
    return compared, bad


def test_criterion_7_oracle_agreement(capsys):
    compared, bad = 0, []
    for kind in ("F1", "F2"):
        for p in (None, 5):
            n, b = _oracle_mismatches(kind, p)
            compared += n
            bad += b
    ok = not bad
    _line(capsys, 7, ok, f"dense oracle agrees on {compared} dimensions for F1 and F2, {len(bad)} mismatches")
    assert ok, bad[:10]


# ---------------------------------------------------------------------------


def test_criterion_8_additivity_and_degeneracy(capsys):
    problems = []
    for fx in fixtures():
        A = fx.algebra
        mods = fx.indecomposables[:5]
        for c, x, y in itertools.product(mods, repeat=3):
            xy = direct_sum([x, y])[0]
            if ext1(c, xy).dim != ext1(c, x).dim + ext1(c, y).dim:
                problems.append(f"{fx.name}: Ext(c, x+y) not additive")
            if ext1(xy, c).dim != ext1(x, c).dim + ext1(y, c).dim:
                problems.append(f"{fx.name}: Ext(x+y, c) not additive")
        for v in range(A.vertex_count):
            P = projective_at(A, v)
            if ar_translate_classical(P).dim != 0 or tau_general(P, dual_of_gamma(P)).tau.dim != 0:
                problems.append(f"{fx.name}: tau(P{v}) != 0")
        for x, z in itertools.product(mods, repeat=2):
            S, inj, proj = direct_sum([x, z])
            d = defects(ShortExactSequence(inj[0], proj[1]))
            if any(d.contra.dim_at(m) or d.cov.dim_at(m) for m in fx.indecomposables):
                problems.append(f"{fx.name}: split sequence with nonzero defect")
    ok = not problems
    _line(capsys, 8, ok, f"Ext additivity, tau(projective) = 0, split sequences have zero defects: {len(problems)} problems")
    assert ok, problems[:10]
