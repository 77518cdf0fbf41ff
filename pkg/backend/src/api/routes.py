from fastapi import APIRouter, HTTPException
from pathlib import Path
from typing import List, Optional
import logging

from src.api.models import (
    CoeffsRequest, CoeffsResponse, IdentityInfo, StringRequest, Term, VerifyRequest, VerifyResponse,
)
from src.catalog import check_instance, find_identity, list_identities, summarize
from src.errors import QSeriesError
from src.expr import evaluate, parse_expr
from src.series import Series
from src.stringfn import StringParams, string_c

logger = logging.getLogger(__name__)

router = APIRouter()

# Global instances
catalog_dir: Optional[Path] = None


def set_dependencies(directory: Path):
    """Set the catalog directory the routes read from"""
    global catalog_dir
    catalog_dir = directory


def _terms(series: Series, order: int) -> List[Term]:
    return [Term(exponent=e, coefficient=str(c)) for e, c in series.dense(order)]


def _bad_request(e: QSeriesError):
    logger.warning(f"Rejected request: {type(e).__name__}: {e}")
    raise HTTPException(status_code=400, detail=f"{type(e).__name__}: {e}")


@router.post("/coeffs", response_model=CoeffsResponse)
def coefficients(request: CoeffsRequest):
    """Coefficients of an expression up to the requested order"""
    try:
        logger.info(f"📥 Coefficients of {request.expr!r} to {request.order}")
        node = parse_expr(request.expr, declared=request.params)
        series = evaluate(node, request.params, request.order)
        return CoeffsResponse(expr=request.expr, order=request.order, terms=_terms(series, request.order))
    except QSeriesError as e:
        _bad_request(e)
    except Exception as e:
        logger.error(f"Coefficient error: {e}", exc_info=True)
        raise HTTPException(status_code=500, detail=str(e))


@router.post("/string", response_model=CoeffsResponse)
def string_function(request: StringRequest):
    """Normalized string function C(m, l) at (p, p')"""
    try:
        params = StringParams.of(request.p, request.pprime, request.m, request.ell)
        series = string_c(params, request.order)
        label = f"C[{request.p},{request.pprime}]({request.m},{request.ell})"
        return CoeffsResponse(expr=label, order=request.order, terms=_terms(series, request.order))
    except QSeriesError as e:
        _bad_request(e)


@router.post("/verify", response_model=VerifyResponse)
def verify_identity(request: VerifyRequest):
    """Verify one catalog identity"""
    try:
        identity = find_identity(catalog_dir, request.name)
        if request.params is None:
            reports = [check_instance(identity, a, request.order) for a in identity.assignments()]
        else:
            declared = {p.name for p in identity.params}
            if set(request.params) != declared:
                raise HTTPException(status_code=400, detail=f"{identity.name} takes parameters {sorted(declared)}")
            ranges = {p.name: p for p in identity.params}
            for name, value in request.params.items():
                if not ranges[name].lo <= value <= ranges[name].hi:
                    raise HTTPException(status_code=400, detail=f"{name}={value} outside {ranges[name].lo}..{ranges[name].hi}")
            assignment = {p.name: request.params[p.name] for p in identity.params}
            reports = [check_instance(identity, assignment, request.order)]
        summary = summarize(reports)
        return VerifyResponse(name=identity.name, ok=summary.ok, reports=summary.reports)
    except QSeriesError as e:
        _bad_request(e)


@router.get("/catalog", response_model=List[IdentityInfo])
async def catalog(pattern: Optional[str] = None):
    """Identities matching a name or file glob"""
    try:
        return [
            IdentityInfo(
                name=i.name, anchor=i.anchor, source=i.source,
                params=" ".join(f"{p.name} in {p.lo}..{p.hi}" for p in i.params),
                instances=i.instance_count(),
            )
            for i in list_identities(catalog_dir, pattern)
        ]
    except QSeriesError as e:
        _bad_request(e)


@router.get("/health")
async def health_check():
    """Health check endpoint"""
    return {
        "status": "healthy",
        "components": {
            "catalog": catalog_dir is not None and Path(catalog_dir).is_dir(),
        }
    }
