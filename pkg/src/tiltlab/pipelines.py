"""Verification pipelines: the check bundles behind the CLI commands and
the acceptance suite.  Each function returns CheckRecord lists; claims are
one-line statements of what was checked."""

from __future__ import annotations

import random
import time

from .derived import (
    RH, cohomology, derived_counit, derived_unit, fully_faithful_check,
    identity_chain_map, is_acyclic, ker_LG_member, les_check, lg_cone_compare,
    one_term_complex, random_bounded_complex, sigma_derived_member,
    ResolutionCapError, Complex, ChainMap, make_chain_map,
)
from .equivalence import (
    G, G_on_morphism, H, E1, T1, TiltingContext, build_context, class_predicates,
    counit, dual_module_regression, ext_tor_duality_identity, ore_equalizer,
    ore_left_completion, partial_cotilting_check, sigma_member, theta, unit,
    verify_theorem, xi,
)
from .homology import ext1_dim, ext1, extension_module
from .linalg import Mat
from .modules import (
    ModuleMorphism, RightModule, direct_sum, hom_dim, hom_space,
    indecomposable_summands, zero_module,
)
from .reporting import CheckRecord
from .tilting import (
    cotilting_check, gen_equals_perp_check, is_tilting, rej_radical_check,
    tilting_torsion_pair, torsion_pair_axioms_report,
)


def _timed(rec: CheckRecord, t0: float) -> CheckRecord:
    rec.elapsed_ms = int((time.monotonic() - t0) * 1000)
    return rec


def check_tilting_pipeline(T: RightModule, probes, bound=None, seed=0):
    """Axiom checks plus the generated-equals-perpendicular sweep."""
    records = []
    t0 = time.monotonic()
    res = is_tilting(T, bound=bound, seed=seed)
    status = {"tilting": "pass", "not_tilting": "fail",
              "undecided": "undecided"}[res.status]
    witness = None
    if res.certificate is not None:
        cor = res.certificate.coresolution
        witness = {"coresolution_multiplicities": list(cor.multiplicities),
                   "T0_dim": cor.T0.dim, "T1_dim": cor.T1.dim}
    rec = CheckRecord(
        "tilting.axioms",
        "candidate satisfies: projective dimension at most one, no "
        "self-extensions (single copy suffices at finite scale), and a "
        "two-step coresolution of the regular module by its own summands",
        status, detail="; ".join(res.failures) or "all three axioms verified",
        witness=witness,
        bound=(bound if bound is not None else T.dim) if status == "undecided" else None)
    records.append(_timed(rec, t0))
    if res.status == "tilting":
        t0 = time.monotonic()
        entries = gen_equals_perp_check(T, [m for _, m in probes])
        bad = [probes[e["probe"]][0] for e in entries if not e["ok"]]
        records.append(_timed(CheckRecord(
            "tilting.generated_iff_no_ext",
            "a probe is generated by the candidate exactly when extensions "
            "from the candidate vanish",
            "pass" if not bad else "fail",
            detail=f"{len(entries)} probes", counterexamples=bad), t0))
        t0 = time.monotonic()
        tp = tilting_torsion_pair(T)
        entries2, ok_orth = torsion_pair_axioms_report(tp, [m for _, m in probes])
        all_ok = ok_orth and all(e["t_idempotent"] and e["quotient_t_free"]
                                 for e in entries2)
        records.append(_timed(CheckRecord(
            "tilting.torsion_pair_axioms",
            "trace is idempotent, quotients are trace-free, and no maps "
            "exist from torsion parts to torsion-free parts",
            "pass" if all_ok else "fail",
            detail=f"{len(entries2)} probes"), t0))
    return records, res


def verify_bb_pipeline(ctx: TiltingContext, r_probes, s_probes, seed=0,
                       ore_pairs=100, ses_samples=200, e_dim_cap=12):
    """The module-level equivalence suite for a built context."""
    records = []
    rng = random.Random(seed)
    rmods = [m for _, m in r_probes]
    smods = [m for _, m in s_probes]

    t0 = time.monotonic()
    report = verify_theorem(ctx, rmods, smods, dim_cap=e_dim_cap)
    records.append(_timed(CheckRecord(
        "bb.equivalence_round_trips",
        "both equivalences round-trip on their classes, functor images land "
        "in the right classes, the natural-map isomorphism criteria match "
        "class membership, and the adjunction triangle identities hold",
        "pass" if not report["failures"] else "fail",
        detail=f"{len(report['entries'])} checks over {len(rmods)}+{len(smods)} probes",
        counterexamples=report["failures"][:12]), t0))

    t0 = time.monotonic()
    checks = partial_cotilting_check(ctx)
    core = [k for k in ("injective_dimension_le_1", "tor_Td_T_vanishes",
                        "dual_identity_ext_left_vanishes", "selfext_Td_vanishes")]
    bad = [k for k in core if not checks[k]]
    records.append(_timed(CheckRecord(
        "bb.dual_partial_cotilting",
        "the dual of the tilting module has injective dimension at most one, "
        "kills Tor against the tilting module (matching the vanishing dual "
        "self-extensions on the left), and has no self-extensions",
        "pass" if not bad else "fail",
        detail=checks["product_clause_note"], counterexamples=bad), t0))

    t0 = time.monotonic()
    cot = cotilting_check(ctx.Td)
    records.append(_timed(CheckRecord(
        "bb.dual_is_cotilting",
        "at finite-dimensional scale the dual module is genuinely cotilting "
        "(checked through its dual's tilting axioms)",
        {"tilting": "pass", "not_tilting": "fail",
         "undecided": "undecided"}[cot.status],
        detail="; ".join(cot.failures) or "",
        bound=ctx.Td.dim if cot.status == "undecided" else None), t0))

    t0 = time.monotonic()
    entries, ok_orth = rej_radical_check(ctx.Td, smods)
    all_ok = ok_orth and all(e["radical"] and e["idempotent"]
                             and e["cogen_iff_rej_zero"] and e["quotient_embeds"]
                             for e in entries)
    obs = sum(1 for e in entries
              if e["perp_observation"] is False)
    records.append(_timed(CheckRecord(
        "bb.reject_radical",
        "the reject into the dual module is an idempotent radical whose "
        "torsion-free class is exactly the cogenerated class",
        "pass" if all_ok else "fail",
        detail=(f"{len(entries)} probes; cogenerated-but-with-extensions "
                f"observations: {obs} (inclusion in the left-perpendicular "
                "class verified, equality reported only)")), t0))

    t0 = time.monotonic()
    pred = class_predicates(ctx, smods, dim_cap=e_dim_cap)
    cross_ok = True
    collapse_ok = True
    for N in smods:
        in_e = pred.in_E(N)          # raises if the two characterizations split
        if in_e and N.dim > 0:
            cross_ok = False
        if pred.in_Y(N) != pred.in_FTd(N) or pred.in_X(N) != pred.in_TTd(N):
            collapse_ok = False
    records.append(_timed(CheckRecord(
        "bb.kernel_class_zero",
        "the tensor/Tor-vanishing class matches its Hom/Ext-into-the-dual "
        "characterization and contains only zero up to the dimension cap",
        "pass" if cross_ok else "fail",
        detail=f"dimension cap {e_dim_cap}; degrees 1,2 tested in the "
               "double perpendicular, higher degrees untested"), t0))
    records.append(_timed(CheckRecord(
        "bb.collapse_of_double_perp",
        "with a zero kernel class the double perpendicular is everything, so "
        "the equivalence classes coincide with the dual torsion pair",
        "pass" if collapse_ok else "fail",
        detail=f"{len(smods)} probes"), time.monotonic()))

    t0 = time.monotonic()
    bad_pairs = [name for name, N in s_probes
                 if not ext_tor_duality_identity(ctx, N)]
    records.append(_timed(CheckRecord(
        "bb.ext_tor_duality_dims",
        "extensions into the dual module have the same dimension as Tor "
        "against the tilting module on every probe",
        "pass" if not bad_pairs else "fail",
        counterexamples=bad_pairs), t0))

    t0 = time.monotonic()
    records.append(_timed(CheckRecord(
        "bb.dual_module_regression",
        "the transpose realization of the dual module agrees with the "
        "hom-into-the-cogenerator realization",
        "pass" if dual_module_regression(ctx) else "fail"), t0))

    t0 = time.monotonic()
    ore_ok, ore_count = _ore_sampling(ctx, smods, rng, ore_pairs)
    records.append(_timed(CheckRecord(
        "bb.left_fraction_witnesses",
        "left-fraction completion and equalizer witnesses exist and satisfy "
        "their equations exactly on seeded random spans",
        "pass" if ore_ok else "fail",
        detail=f"{ore_count} sampled (s, f) pairs"), t0))

    t0 = time.monotonic()
    ses_ok, ses_count = _two_out_of_three_sampling(ctx, pred, smods, rng,
                                                   ses_samples)
    records.append(_timed(CheckRecord(
        "bb.kernel_class_two_of_three",
        "in sampled short exact sequences, two terms in the kernel class "
        "force the third (vacuous where the class is zero); the class is "
        "also closed under the sampled sums and summands",
        "pass" if ses_ok else "fail",
        detail=f"{ses_count} sampled sequences"), t0))
    return records, report


def _ore_sampling(ctx, smods, rng, target_pairs):
    count = 0
    pool = [m for m in smods if m.dim > 0]
    if not pool:
        return True, 0
    while count < target_pairs:
        N = pool[rng.randrange(len(pool))]
        Z = pool[rng.randrange(len(pool))]
        eta = unit(ctx, N).morphism
        s_choices = [eta, ModuleMorphism.identity(N)]
        s = s_choices[rng.randrange(len(s_choices))]
        homs = hom_space(N, Z)
        if homs:
            coeffs = [ctx.S.field.of_int(rng.randint(-2, 2)) for _ in homs]
            mat = Mat.zero(ctx.S.field, N.dim, Z.dim)
            for c, h in zip(coeffs, homs):
                if c != ctx.S.field.zero:
                    mat = mat + h.mat.scale(c)
            f = ModuleMorphism(N, Z, mat, check=False)
        else:
            f = ModuleMorphism.zero(N, Z)
        t, g = ore_left_completion(ctx, s, f)
        if s.then(g).mat != f.then(t).mat or not sigma_member(ctx, t):
            return False, count
        # equalizer sample: h1, h2 : target(s) -> Z with h1 s = h2 s
        Y = s.target
        homs2 = hom_space(Y, Z)
        if homs2:
            h1 = homs2[rng.randrange(len(homs2))]
            diff_ok = None
            for h2 in homs2:
                if s.then(h1).mat == s.then(h2).mat:
                    diff_ok = h2
                    break
            if diff_ok is not None:
                t2 = ore_equalizer(ctx, s, h1, diff_ok)
                if h1.then(t2).mat != diff_ok.then(t2).mat:
                    return False, count
        count += 1
    return True, count


def _two_out_of_three_sampling(ctx, pred, smods, rng, target):
    """Random extensions of S-probes; verify the 2-of-3 property of the
    kernel class, plus closure under sums and summands."""
    pool = [m for m in smods if 0 < m.dim]
    count = 0
    guard = 0
    while count < target and guard < target * 6:
        guard += 1
        L = pool[rng.randrange(len(pool))]
        N = pool[rng.randrange(len(pool))]
        e = ext1(N, L)
        if e.dim == 0:
            coords = ()
        else:
            coords = tuple(ctx.S.field.of_int(rng.randint(0, 1))
                           for _ in range(e.dim))
        E, incl, proj = extension_module(L, N, e, coords)
        flags = [pred.in_E(L), pred.in_E(E), pred.in_E(N)]
        if sum(flags) >= 2 and not all(flags):
            return False, count
        count += 1
    # closure under finite sums and summands on the sampled pool
    for m in pool[:6]:
        for n in pool[:6]:
            s = direct_sum([m, n])[0]
            if pred.in_E(m) and pred.in_E(n) and not pred.in_E(s):
                return False, count
            if pred.in_E(s):
                for part in indecomposable_summands(s):
                    if not pred.in_E(part.module):
                        return False, count
    return True, count


def verify_derived_pipeline(ctx: TiltingContext, declared_complexes,
                            pool_r, pool_s, window, samples=50, seed=0,
                            ff_pairs=10, les_subset=12):
    """The bounded-derived suite for a context."""
    records = []
    rng = random.Random(seed)
    F = ctx.R.field

    complexes = list(declared_complexes)
    while len(complexes) < samples:
        complexes.append((f"sample{len(complexes)}",
                          random_bounded_complex(pool_r, rng, ctx.R)))

    t0 = time.monotonic()
    qiso_fail = []
    dims_fail = []
    les_fail = []
    undecided = []
    les_done = 0
    for name, X in complexes:
        try:
            dc = derived_counit(ctx, X)
        except ResolutionCapError as ex:
            undecided.append(f"{name}: {ex}")
            continue
        if not (dc.is_quasi_iso and dc.equivariant):
            qiso_fail.append(name)
        for n in range(X.lo - 1, X.hi + 2):
            if cohomology(dc.lg.complex, n).module.dim != \
                    cohomology(X, n).module.dim:
                dims_fail.append(f"{name}@{n}")
        if les_done < les_subset:
            rep = les_check(ctx, dc.rh.complex)
            if not rep["all_exact"]:
                les_fail.append(name)
            les_done += 1
    status = "fail" if (qiso_fail or dims_fail or les_fail) else \
        ("undecided" if undecided else "pass")
    records.append(_timed(CheckRecord(
        "derived.counit_quasi_iso",
        "the evaluation map from the derived tensor of the derived hom is a "
        "quasi-isomorphism with R-equivariant induced maps, and cohomology "
        "dimensions return to those of the input complex",
        status, detail=f"{len(complexes)} bounded complexes",
        counterexamples=(qiso_fail + dims_fail)[:10],
        bound=24 if status == "undecided" else None), t0))
    records.append(CheckRecord(
        "derived.les_exactness",
        "the tensor short exact sequence of complexes and its cone "
        "counterpart have exact long sequences at every node, and the cone "
        "model matches the plain tensor degreewise",
        "fail" if les_fail else status if status == "undecided" else "pass",
        detail=f"{les_done} resolved complexes",
        counterexamples=les_fail[:10],
        bound=24 if status == "undecided" and not les_fail else None))

    t0 = time.monotonic()
    pairs = []
    for i, (na, Xa) in enumerate(complexes[:ff_pairs]):
        pairs.append((Xa, complexes[(i + 1) % len(complexes)][1]))
    ff = fully_faithful_check(ctx, pairs, window)
    records.append(_timed(CheckRecord(
        "derived.fully_faithful",
        "derived hom dimensions agree across the functor and the induced "
        "maps on derived homs are bijective over the degree window",
        "pass" if ff["all_ok"] else "fail",
        detail=f"{len(pairs)} pairs, window {list(window)}"), t0))

    t0 = time.monotonic()
    ker_fail = []
    sigma_fail = []
    cone_compat_fail = []
    n_s = 0
    while n_s < max(8, samples // 4):
        C = random_bounded_complex(pool_s, rng, ctx.S)
        member = ker_LG_member(ctx, C)
        if member != is_acyclic(C):
            ker_fail.append(f"s-sample{n_s}")
        f = identity_chain_map(C)
        if not sigma_derived_member(ctx, f):
            sigma_fail.append(f"id@s-sample{n_s}")
        n_s += 1
    for name, N in _one_term_maps(ctx, pool_s, rng, 6):
        try:
            if not lg_cone_compare(ctx, N):
                cone_compat_fail.append(name)
            sigma_derived_member(ctx, N)   # internal cross-check must agree
        except Exception as ex:
            cone_compat_fail.append(f"{name}: {ex}")
    records.append(_timed(CheckRecord(
        "derived.kernel_membership",
        "membership in the kernel of the derived tensor coincides with "
        "acyclicity on the sweep, invertibility after the derived tensor "
        "coincides with cone membership, and the derived tensor commutes "
        "with cones up to the verified block shuffle",
        "pass" if not (ker_fail or sigma_fail or cone_compat_fail) else "fail",
        detail=f"{n_s} kernel samples",
        counterexamples=(ker_fail + sigma_fail + cone_compat_fail)[:10]), t0))

    t0 = time.monotonic()
    unit_fail = []
    unit_skipped = []
    unit_done = 0
    for i in range(min(8, len(pool_s))):
        N = pool_s[i % len(pool_s)]
        if N.dim == 0:
            continue
        try:
            du = derived_unit(ctx, one_term_complex(N))
        except ResolutionCapError:
            unit_skipped.append(i)
            continue
        unit_done += 1
        if not du.is_quasi_iso:
            unit_fail.append(i)
    if unit_fail:
        ustatus = "fail"
    elif unit_done == 0 and unit_skipped:
        ustatus = "undecided"
    else:
        ustatus = "pass"
    records.append(_timed(CheckRecord(
        "derived.unit_quasi_iso",
        "the derived unit is a quasi-isomorphism on the swept complexes "
        "(finite-scale collapse of the localization)",
        ustatus,
        detail=f"{unit_done} one-term complexes over the endomorphism side"
               + (f"; {len(unit_skipped)} skipped at the resolution cap"
                  if unit_skipped else ""),
        bound=24 if ustatus == "undecided" else None), t0))
    return records


def _one_term_maps(ctx, pool_s, rng, count):
    out = []
    tries = 0
    while len(out) < count and tries < count * 5:
        tries += 1
        A = pool_s[rng.randrange(len(pool_s))]
        B = pool_s[rng.randrange(len(pool_s))]
        if A.dim == 0 or B.dim == 0:
            continue
        homs = hom_space(A, B)
        if not homs:
            continue
        h = homs[rng.randrange(len(homs))]
        f = make_chain_map(one_term_complex(A), one_term_complex(B), {0: h},
                           check=True)
        out.append((f"map{len(out)}", f))
    return out
