"""HTTP service wrapping the workbench.

Request and response bodies are pydantic models mirroring the algebra
document format; every endpoint delegates to a plain handler function,
and the command-line client calls the same handlers in process, so the
two surfaces cannot drift apart.
"""

from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import congr, docio, kalman, search, varieties
from .errors import InputError, TheoremViolationError


class OpsDoc(BaseModel):
    meet: Optional[list[list[int]]] = None
    join: Optional[list[list[int]]] = None
    arrow: Optional[list[list[int]]] = None
    neg: Optional[list[int]] = None


class ConstsDoc(BaseModel):
    bottom: Optional[int] = None
    top: Optional[int] = None
    center: Optional[int] = None


class AlgebraDoc(BaseModel):
    size: int
    names: Optional[list[str]] = None
    leq: list[list[int]]
    ops: Optional[OpsDoc] = None
    consts: Optional[ConstsDoc] = None

    def to_algebra(self):
        doc = self.model_dump(exclude_none=True)
        if "ops" in doc and not doc["ops"]:
            del doc["ops"]
        if "consts" in doc and not doc["consts"]:
            del doc["consts"]
        return docio.doc_to_algebra(doc)

    @staticmethod
    def from_algebra(A):
        return AlgebraDoc.model_validate(docio.algebra_to_doc(A))


class Violation(BaseModel):
    axiom: str
    witness: list[int]


class ValidateRequest(BaseModel):
    algebra: AlgebraDoc


class ValidateResponse(BaseModel):
    ok: bool
    violations: list[Violation]


class ClassifyResponse(BaseModel):
    labels: list[str]


class KalmanRequest(BaseModel):
    algebra: AlgebraDoc
    construction: Literal["poset", "ms", "his", "bdl", "ha"] = Field(alias="as")
    model_config = {"populate_by_name": True}


class RoundtripRequest(KalmanRequest):
    pass


class AlgebraResponse(BaseModel):
    algebra: AlgebraDoc


class CkResponse(BaseModel):
    holds: bool
    witness: Optional[list[int]] = None


class RoundtripResponse(BaseModel):
    battery_ok: bool
    interpolation: bool
    alpha_isomorphism: bool
    beta_isomorphism: bool
    center_isomorphic: bool


class CongruencesResponse(BaseModel):
    congruences: list[list[list[int]]]


class FiltersRequest(BaseModel):
    algebra: AlgebraDoc
    congruent_only: bool = False


class FiltersResponse(BaseModel):
    filters: list[list[int]]


class QuotientRequest(BaseModel):
    algebra: AlgebraDoc
    theta: list[list[int]]


class SearchRequest(BaseModel):
    class_label: str = Field(alias="class")
    max_size: int
    predicate: str = "ck"
    modulo_iso: bool = True
    jobs: int = 1
    model_config = {"populate_by_name": True}


class SearchResponse(BaseModel):
    status: str
    examined: int
    retained: int
    witness: Optional[AlgebraDoc] = None
    detail: Optional[str] = None


# -- handlers (shared by HTTP routes and the CLI) -------------------------

class ValidateReport(ValidateResponse):
    message: Optional[str] = None


def validate_document(doc) -> ValidateReport:
    """Full document validation: order axioms get per-witness entries,
    any other inconsistency (table mismatch, bad constants) is reported
    as a single message."""
    from .finord import validate_poset

    if (isinstance(doc, dict) and isinstance(doc.get("leq"), list)
            and all(isinstance(r, list) for r in doc["leq"])
            and len({len(r) for r in doc["leq"]} | {len(doc["leq"])}) == 1):
        report = validate_poset(doc["leq"])
        if not report.ok:
            return ValidateReport(
                ok=False,
                violations=[Violation(axiom=a, witness=list(w))
                            for a, w in report.violations],
                message="leq is not a partial order")
    try:
        docio.doc_to_algebra(doc)
    except InputError as exc:
        return ValidateReport(ok=False, violations=[], message=str(exc))
    return ValidateReport(ok=True, violations=[])


def handle_validate(request: ValidateRequest) -> ValidateReport:
    return validate_document(request.algebra.model_dump(exclude_none=True))


def handle_classify(request: ValidateRequest) -> ClassifyResponse:
    A = request.algebra.to_algebra()
    return ClassifyResponse(labels=varieties.classify(A))


def handle_kalman(request: KalmanRequest) -> AlgebraResponse:
    A = request.algebra.to_algebra()
    construct = kalman.KALMAN_CONSTRUCTIONS[request.construction]
    kalg = construct(A)
    return AlgebraResponse(algebra=AlgebraDoc.from_algebra(kalg.algebra))


def handle_center(request: ValidateRequest) -> AlgebraResponse:
    A = request.algebra.to_algebra()
    return AlgebraResponse(algebra=AlgebraDoc.from_algebra(kalman.center_algebra(A)))


def handle_ck(request: ValidateRequest) -> CkResponse:
    A = request.algebra.to_algebra()
    holds, witness = kalman.check_ck(A)
    return CkResponse(holds=holds,
                      witness=list(witness) if witness else None)


def handle_roundtrip(request: RoundtripRequest) -> RoundtripResponse:
    H = request.algebra.to_algebra()
    construct = kalman.KALMAN_CONSTRUCTIONS[request.construction]
    kalg = construct(H)
    T = kalg.algebra
    if request.construction == "poset":
        battery = varieties.check_kleene_poset(T)
    elif request.construction == "ms":
        battery = kalman.check_km_conditions(T)
    elif request.construction == "his":
        battery = kalman.check_khis_battery(T)
    else:
        battery = varieties.check_centered_kleene(T)
        if battery.ok and request.construction == "ha":
            battery = varieties.check_nelson_lattice(T)
    interpolation, _ = kalman.check_ck(T)
    alpha = kalman.alpha_map(kalg)
    beta, _ = kalman.beta_with_kalman(T, level=request.construction)
    C = kalman.center_algebra(T)
    iso, _ = _center_isomorphic(H, C, request.construction)
    return RoundtripResponse(
        battery_ok=battery.ok,
        interpolation=interpolation,
        alpha_isomorphism=alpha.is_isomorphism,
        beta_isomorphism=beta.is_isomorphism,
        center_isomorphic=iso)


def _center_isomorphic(H, C, construction=None):
    # align optional-feature signatures before the isomorphism search:
    # keep exactly the features both sides can carry
    def normalize(A, other):
        return _with_exact_features(
            A,
            meet=A.glb_table if (A.meet_total and other.meet_total) else None,
            join=A.lub_table if (A.join_total and other.join_total) else None,
            arrow=A.arrow if (A.arrow is not None and other.arrow is not None)
            else None,
            involution=A.involution
            if (A.involution is not None and other.involution is not None)
            else None,
            bottom=A.bottom
            if (A.bottom is not None and other.bottom is not None) else None,
            top=A.top if (A.top is not None and other.top is not None) else None,
            center=A.center
            if (A.center is not None and other.center is not None) else None)

    return search.are_isomorphic(normalize(H, C), normalize(C, H))


def _with_exact_features(A, **fields):
    from .finord import FiniteAlgebra

    return FiniteAlgebra(A.leq, names=A.names, validate=False, **fields)


def handle_congruences(request: ValidateRequest) -> CongruencesResponse:
    A = request.algebra.to_algebra()
    thetas = congr.enumerate_congruences(A, congr.algebra_ops(A))
    return CongruencesResponse(
        congruences=[[list(b) for b in t.blocks()] for t in thetas])


def handle_wb_congruences(request: ValidateRequest) -> CongruencesResponse:
    A = request.algebra.to_algebra()
    thetas = congr.enumerate_wb_congruences(A)
    return CongruencesResponse(
        congruences=[[list(b) for b in t.blocks()] for t in thetas])


def handle_filters(request: FiltersRequest) -> FiltersResponse:
    A = request.algebra.to_algebra()
    filters = congr.enumerate_filters(A)
    if request.congruent_only:
        filters = [F for F in filters if congr.is_congruent_filter(A, F)[0]]
    return FiltersResponse(filters=[list(F.members()) for F in filters])


def handle_quotient(request: QuotientRequest) -> AlgebraResponse:
    A = request.algebra.to_algebra()
    theta = congr.Congruence.from_blocks(A.size, request.theta)
    Q = congr.quotient_wb(A, theta)
    return AlgebraResponse(algebra=AlgebraDoc.from_algebra(Q))


def handle_search(request: SearchRequest) -> SearchResponse:
    spec = search.EnumerationSpec(
        target_class=request.class_label, max_size=request.max_size,
        modulo_iso=request.modulo_iso, predicate=request.predicate)
    outcome = search.find_counterexample(spec, jobs=request.jobs)
    witness = None
    if outcome.witness_text is not None:
        witness = AlgebraDoc.from_algebra(
            docio.parse_algebra_text(outcome.witness_text))
    return SearchResponse(status=outcome.status, examined=outcome.examined,
                          retained=outcome.retained, witness=witness,
                          detail=outcome.witness_detail)


# -- FastAPI application ---------------------------------------------------

app = FastAPI(title="finalg", description="Finite-algebra workbench")


def _wrap(handler, request):
    try:
        return handler(request)
    except InputError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    except TheoremViolationError as exc:
        detail = str(exc)
        if exc.witness_text:
            detail += "\n" + exc.witness_text
        raise HTTPException(status_code=500, detail=detail) from exc


@app.post("/validate", response_model=ValidateReport)
def validate_endpoint(request: ValidateRequest):
    return _wrap(handle_validate, request)


@app.post("/classify", response_model=ClassifyResponse)
def classify_endpoint(request: ValidateRequest):
    return _wrap(handle_classify, request)


@app.post("/kalman", response_model=AlgebraResponse)
def kalman_endpoint(request: KalmanRequest):
    return _wrap(handle_kalman, request)


@app.post("/center", response_model=AlgebraResponse)
def center_endpoint(request: ValidateRequest):
    return _wrap(handle_center, request)


@app.post("/ck", response_model=CkResponse)
def ck_endpoint(request: ValidateRequest):
    return _wrap(handle_ck, request)


@app.post("/roundtrip", response_model=RoundtripResponse)
def roundtrip_endpoint(request: RoundtripRequest):
    return _wrap(handle_roundtrip, request)


@app.post("/congruences", response_model=CongruencesResponse)
def congruences_endpoint(request: ValidateRequest):
    return _wrap(handle_congruences, request)


@app.post("/wb-congruences", response_model=CongruencesResponse)
def wb_congruences_endpoint(request: ValidateRequest):
    return _wrap(handle_wb_congruences, request)


@app.post("/filters", response_model=FiltersResponse)
def filters_endpoint(request: FiltersRequest):
    return _wrap(handle_filters, request)


@app.post("/quotient", response_model=AlgebraResponse)
def quotient_endpoint(request: QuotientRequest):
    return _wrap(handle_quotient, request)


@app.post("/search", response_model=SearchResponse)
def search_endpoint(request: SearchRequest):
    return _wrap(handle_search, request)
