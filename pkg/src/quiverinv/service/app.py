"""FastAPI service wrapping the core package.

Each endpoint is stateless: the algebra and any representations arrive as
their text formats, and the response carries the full reproducibility
envelope (tool version, seed, caps, caveats).  Domain errors map to 422
with a module tag; undecided outcomes are ordinary payloads, not errors.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..bound_quiver import parse_algebra, print_algebra
from ..decomp import (
    generic_decomposition_sampled,
    is_generic_root_sampled,
    predict_rational_invariants,
)
from ..errors import (
    AlgebraParseError,
    CannotSampleError,
    DegreeCapExceededError,
    DecompositionUndecidedError,
    QuiverInvError,
    ResolutionNotTerminatedError,
    TransportError,
)
from ..forms import classify_q, euler_data, tits_form, weight_from_dimvec
from ..rep import parse_representation, print_representation
from ..sampling import sample_many
from ..semi_invariants import (
    check_symmetric_factorization,
    classify_moduli_tame,
    hilbert_series,
)
from ..stability import (
    jh_filtration_ss,
    king_test,
    moduli_dimension,
    theta_stable_decomposition,
)
from ..tilting import (
    build_tilting_context,
    is_tilting,
    is_well_positioned,
    torsion_membership,
    transport_module,
    transport_weight,
    write_tilting_context,
)
from .models import (
    AlgebraCheckRequest,
    AlgebraCheckResponse,
    DecompGenericRequest,
    DecompGenericResponse,
    DecompPartOut,
    DecompPredictRequest,
    DecompPredictResponse,
    DecompositionRequest,
    DecompositionResponse,
    FactorOut,
    FormsRequest,
    FormsResponse,
    JHRequest,
    JHResponse,
    KingRequest,
    KingResponse,
    ModuliDimensionRequest,
    ModuliDimensionResponse,
    PartOut,
    SiClassifyRequest,
    SiClassifyResponse,
    SiFactorizationRequest,
    SiFactorizationResponse,
    SiSeriesRequest,
    SiSeriesResponse,
    TiltContextRequest,
    TiltContextResponse,
    TiltTorsionRequest,
    TiltTorsionResponse,
    TiltTransportRequest,
    TiltTransportResponse,
    TiltWellPositionedRequest,
    TiltWellPositionedResponse,
    VersionResponse,
)

app = FastAPI(
    title="quiverinv",
    description="Invariant-theoretic data of bound quiver algebras over exact arithmetic",
    version=__version__,
)

_ERROR_MODULES = {
    AlgebraParseError: "bound_quiver",
    ResolutionNotTerminatedError: "forms",
    DegreeCapExceededError: "semi_invariants",
    CannotSampleError: "sampling",
    DecompositionUndecidedError: "rep",
    TransportError: "tilting",
}


def _fail(exc: QuiverInvError):
    module = "core"
    for klass, name in _ERROR_MODULES.items():
        if isinstance(exc, klass):
            module = name
            break
    raise HTTPException(status_code=422, detail={"module": module, "message": str(exc)})


def _algebra(text):
    try:
        return parse_algebra(text)
    except QuiverInvError as exc:
        _fail(exc)


def _rep(alg, text):
    try:
        return parse_representation(text, alg)
    except QuiverInvError as exc:
        _fail(exc)


def _samples(alg, req, d):
    if req.rep_texts:
        return [_rep(alg, t) for t in req.rep_texts]
    if d is None:
        raise HTTPException(
            status_code=422,
            detail={"module": "service", "message": "either d or rep_texts is required"},
        )
    try:
        return sample_many(alg, d, req.samples, req.seed, req.zero_arrows)
    except QuiverInvError as exc:
        _fail(exc)


def _context(req):
    alg = _algebra(req.algebra_text)
    summands = [_rep(alg, t) for t in req.summand_texts]
    T = summands[0]
    for s in summands[1:]:
        T = T.direct_sum(s)
    try:
        return alg, build_tilting_context(T, summand_order=summands)
    except QuiverInvError as exc:
        _fail(exc)


@app.get("/version", response_model=VersionResponse)
def version():
    return VersionResponse(tool_version=__version__)


@app.post("/algebra/check", response_model=AlgebraCheckResponse)
def algebra_check(req: AlgebraCheckRequest):
    alg = _algebra(req.algebra_text)
    try:
        verdict = alg.check_admissible(req.l_max)
        dimension = None
        basis = None
        bound = verdict.bound
        if verdict.status.value == "admissible":
            pb = alg.path_basis(req.l_max)
            dimension = pb.dimension
            basis = [p.label() for p in pb.basis]
        return AlgebraCheckResponse(
            tool_version=__version__,
            seed=req.seed,
            caps={"l_max": req.l_max},
            verdict=verdict.status.value,
            bound=bound,
            dimension=dimension,
            vertices=list(alg.vertices),
            basis=basis,
            notes=list(verdict.notes),
        )
    except QuiverInvError as exc:
        _fail(exc)


@app.post("/forms/report", response_model=FormsResponse)
def forms_report(req: FormsRequest):
    alg = _algebra(req.algebra_text)
    try:
        ed = euler_data(alg, req.l_max)
        q = tits_form(alg, req.d)
        q_class = classify_q(alg, req.d)
        weight = None
        if req.weight_from is not None:
            weight = list(
                weight_from_dimvec(alg, req.weight_from, req.weight_kind, euler=ed)
            )
        return FormsResponse(
            tool_version=__version__,
            seed=req.seed,
            caps={"l_max": req.l_max},
            euler_matrix=[list(r) for r in ed.matrix],
            tits=q,
            q_class=q_class,
            weight=weight,
        )
    except QuiverInvError as exc:
        _fail(exc)


@app.post("/stability/king", response_model=KingResponse)
def stability_king(req: KingRequest):
    alg = _algebra(req.algebra_text)
    m = _rep(alg, req.rep_text)
    try:
        verdict = king_test(m, req.theta)
    except QuiverInvError as exc:
        _fail(exc)
    return KingResponse(
        tool_version=__version__,
        seed=req.seed,
        status=verdict.status,
        witness=list(verdict.witness) if verdict.witness else None,
        notes=list(verdict.notes),
    )


@app.post("/stability/jh", response_model=JHResponse)
def stability_jh(req: JHRequest):
    alg = _algebra(req.algebra_text)
    m = _rep(alg, req.rep_text)
    try:
        cls = jh_filtration_ss(m, req.theta)
    except QuiverInvError as exc:
        _fail(exc)
    factors = [
        FactorOut(
            d=list(e),
            witness_available=w is not None,
            witness_text=print_representation(w) if w is not None else None,
        )
        for e, w in cls.factors
    ]
    return JHResponse(
        tool_version=__version__, seed=req.seed, factors=factors, notes=list(cls.notes)
    )


@app.post("/stability/decomposition", response_model=DecompositionResponse)
def stability_decomposition(req: DecompositionRequest):
    alg = _algebra(req.algebra_text)
    mods = _samples(alg, req, req.d)
    try:
        dec = theta_stable_decomposition(mods, req.theta)
    except QuiverInvError as exc:
        _fail(exc)
    return DecompositionResponse(
        tool_version=__version__,
        seed=req.seed,
        caps={"samples": len(mods)},
        caveats=[n for n in dec.notes],
        parts=[PartOut(multiplicity=m, d=list(e)) for m, e in dec.parts],
        agreement=dec.agreement,
        sample_count=dec.sample_count,
        disagreement=dec.disagreement,
    )


@app.post("/stability/moduli-dimension", response_model=ModuliDimensionResponse)
def stability_moduli_dimension(req: ModuliDimensionRequest):
    alg = _algebra(req.algebra_text)
    d = req.d or (req.rep_texts and None)
    mods = _samples(alg, req, req.d)
    if d is None:
        d = mods[0].dims
    try:
        report = moduli_dimension(alg, d, req.theta, mods)
    except QuiverInvError as exc:
        _fail(exc)
    return ModuliDimensionResponse(
        tool_version=__version__,
        seed=req.seed,
        caps={"samples": len(mods)},
        caveats=list(report.notes),
        value=report.value,
        component_dim=report.component_dim,
        ambient_dim=report.ambient_dim,
        jacobian_rank=report.jacobian_rank,
        group_dim=report.group_dim,
    )


@app.post("/si/series", response_model=SiSeriesResponse)
def si_series(req: SiSeriesRequest):
    alg = _algebra(req.algebra_text)
    try:
        report = hilbert_series(alg, req.d, req.theta, req.m_max, req.degree_cap)
    except QuiverInvError as exc:
        _fail(exc)
    return SiSeriesResponse(
        tool_version=__version__,
        seed=req.seed,
        caps={"m_max": req.m_max, "degree_cap": req.degree_cap},
        caveats=list(report.caveats),
        dims=list(report.dims),
    )


@app.post("/si/factorization", response_model=SiFactorizationResponse)
def si_factorization(req: SiFactorizationRequest):
    alg = _algebra(req.algebra_text)
    parts = [(p.d, p.multiplicity) for p in req.parts]
    try:
        report = check_symmetric_factorization(
            alg, req.theta, parts, req.m_max, req.degree_cap, req.seed, req.zero_arrows
        )
    except QuiverInvError as exc:
        _fail(exc)
    return SiFactorizationResponse(
        tool_version=__version__,
        seed=req.seed,
        caps={"m_max": req.m_max, "degree_cap": req.degree_cap},
        caveats=list(report.caveats),
        passed=report.passed,
        ambient_dims=list(report.ambient_dims),
        expected_dims=list(report.expected_dims),
        factor_dims={str(k): list(v) for k, v in report.factor_dims.items()},
    )


@app.post("/si/classify", response_model=SiClassifyResponse)
def si_classify(req: SiClassifyRequest):
    alg = _algebra(req.algebra_text)
    decomposition = [(p.multiplicity, tuple(p.d)) for p in req.decomposition]
    d = req.d or [
        sum(p.multiplicity * p.d[i] for p in req.decomposition)
        for i in range(len(alg.vertices))
    ]
    try:
        pred = classify_moduli_tame(alg, d, req.theta, decomposition)
    except QuiverInvError as exc:
        _fail(exc)
    return SiClassifyResponse(
        tool_version=__version__,
        seed=req.seed,
        kind=pred.kind,
        exponents=list(pred.exponents),
        transcendence_degree=pred.transcendence_degree,
        shape=pred.shape,
        notes=list(pred.notes),
    )


@app.post("/tilt/context", response_model=TiltContextResponse)
def tilt_context(req: TiltContextRequest):
    alg = _algebra(req.algebra_text)
    summands = [_rep(alg, t) for t in req.summand_texts]
    T = summands[0]
    for s in summands[1:]:
        T = T.direct_sum(s)
    try:
        verdict = is_tilting(T)
        if not verdict.is_tilting:
            return TiltContextResponse(
                tool_version=__version__,
                seed=req.seed,
                caveats=[f"not a tilting module: pd_ok={verdict.pd_ok}, "
                         f"self_ext={verdict.self_ext_dim}, basic={verdict.basic}"],
                is_tilting=False,
                pd=verdict.pd,
                self_ext_dim=verdict.self_ext_dim,
                summand_count=verdict.summand_count,
                basic=verdict.basic,
                b_algebra_text="",
                u=[],
                context_text="",
            )
        ctx = build_tilting_context(T, summand_order=summands)
    except QuiverInvError as exc:
        _fail(exc)
    return TiltContextResponse(
        tool_version=__version__,
        seed=req.seed,
        is_tilting=True,
        pd=verdict.pd,
        self_ext_dim=verdict.self_ext_dim,
        summand_count=verdict.summand_count,
        basic=verdict.basic,
        b_algebra_text=print_algebra(ctx.B),
        u=[list(r) for r in ctx.u],
        context_text=write_tilting_context(ctx),
    )


@app.post("/tilt/well-positioned", response_model=TiltWellPositionedResponse)
def tilt_well_positioned(req: TiltWellPositionedRequest):
    _, ctx = _context(req)
    try:
        report = is_well_positioned(
            ctx,
            req.theta,
            bound=req.bound,
            samples_per_vector=req.samples_per_vector,
            seed=req.seed,
            zero_arrows=req.zero_arrows,
        )
    except QuiverInvError as exc:
        _fail(exc)
    return TiltWellPositionedResponse(
        tool_version=__version__,
        seed=req.seed,
        caps={"bound": req.bound, "samples_per_vector": req.samples_per_vector},
        verdict=report.verdict,
        bound=report.bound,
        semistable_dims=[list(e) for e in report.semistable_dims],
        case1_counterexamples=[f"{d}: {why}" for d, why in report.case1_counterexamples],
        case2_counterexamples=[f"{d}: {why}" for d, why in report.case2_counterexamples],
        functor_ambiguous=report.functor_ambiguous,
        notes=list(report.notes),
    )


@app.post("/tilt/transport", response_model=TiltTransportResponse)
def tilt_transport(req: TiltTransportRequest):
    alg, ctx = _context(req)
    m = _rep(alg, req.rep_text)
    notes = []
    case = req.case
    try:
        if case == "auto":
            report = is_well_positioned(
                ctx,
                req.theta,
                bound=req.bound,
                samples_per_vector=req.samples_per_vector,
                seed=req.seed,
                zero_arrows=req.zero_arrows,
            )
            if report.verdict not in ("case1", "case2"):
                raise TransportError(
                    f"weight is not well-positioned ({report.verdict}); "
                    "transport refused"
                )
            if report.functor_ambiguous:
                raise TransportError(
                    "both torsion and torsion-free semistables found; pass an "
                    "explicit case"
                )
            case = report.verdict
            notes.append(f"well-positioned verdict: {case} (bound {req.bound})")
        theta_prime = transport_weight(ctx, req.theta, case)
        result = transport_module(ctx, m, req.theta, case)
    except QuiverInvError as exc:
        _fail(exc)
    return TiltTransportResponse(
        tool_version=__version__,
        seed=req.seed,
        caps={"bound": req.bound, "samples_per_vector": req.samples_per_vector},
        case=case,
        functor=result.functor,
        theta_prime=list(theta_prime),
        image_dims=list(result.dimension_vector),
        image_text=print_representation(result.module, algebra_name="B"),
        stability_status=result.stability_status,
        notes=notes + list(result.notes),
    )


@app.post("/tilt/torsion", response_model=TiltTorsionResponse)
def tilt_torsion(req: TiltTorsionRequest):
    alg, ctx = _context(req)
    m = _rep(alg, req.rep_text)
    try:
        membership, notes = torsion_membership(ctx, m)
    except QuiverInvError as exc:
        _fail(exc)
    return TiltTorsionResponse(
        tool_version=__version__, seed=req.seed, membership=membership, notes=notes
    )


@app.post("/decomp/generic", response_model=DecompGenericResponse)
def decomp_generic(req: DecompGenericRequest):
    alg = _algebra(req.algebra_text)
    try:
        user_reps = [_rep(alg, t) for t in req.rep_texts] if req.rep_texts else None
        root, dec = is_generic_root_sampled(
            alg, req.d, req.samples, req.seed, req.zero_arrows, user_reps
        )
    except QuiverInvError as exc:
        _fail(exc)
    return DecompGenericResponse(
        tool_version=__version__,
        seed=req.seed,
        caps={"samples": req.samples},
        parts=[
            DecompPartOut(multiplicity=m, d=list(dv), q_label=q)
            for m, dv, q in dec.parts
        ],
        confidence=dec.confidence,
        sample_count=dec.sample_count,
        disagreement=dec.disagreement,
        generic_root=root,
        notes=list(dec.notes),
    )


@app.post("/decomp/predict", response_model=DecompPredictResponse)
def decomp_predict(req: DecompPredictRequest):
    alg = _algebra(req.algebra_text)
    try:
        pred = predict_rational_invariants(
            alg, [(p.multiplicity, tuple(p.d)) for p in req.decomposition]
        )
    except QuiverInvError as exc:
        _fail(exc)
    return DecompPredictResponse(
        tool_version=__version__,
        seed=req.seed,
        transcendence_degree=pred.transcendence_degree,
        field_shape=pred.field_shape,
        notes=list(pred.notes),
    )
