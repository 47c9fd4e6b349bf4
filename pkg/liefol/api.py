"""
liefol - HTTP API
FastAPI service exposing the check, classify, family and series reports.
"""

import logging
import random
from typing import List, Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from liefol import algebra_file, config, report
from liefol.errors import LiefolError
from liefol.families import DISPLAY_NAMES, FAMILY_CATALOG, FamilyId, assemble, family, sample_parameters
from liefol.foliation import Split
from liefol.lie_core import format_scalar, parse_rational
from liefol.logger import get_logger, log_request_timing
from liefol.series import NilSpec, SolSpec

logger = logging.getLogger(__name__)
app_logger = get_logger()

app = FastAPI(title=config.API_TITLE, version=config.API_VERSION)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_methods=["*"],
    allow_headers=["*"],
)


# === Pydantic Models ===

class CheckRequest(BaseModel):
    document: algebra_file.AlgebraFile
    vertical: Optional[List[int]] = None
    exact: bool = True
    tolerance: Optional[float] = None


class SolRequest(BaseModel):
    alphas: List[str] = Field(min_length=1)
    k: Optional[int] = None


def _fail(e: LiefolError, route: str, status_code: int = 400):
    app_logger.log_error(
        error_type=type(e).__name__,
        error_message=str(e),
        context={'route': route},
    )
    raise HTTPException(status_code=status_code, detail=str(e))


def _structure(request: CheckRequest):
    A = algebra_file.to_structure_constants(request.document, request.exact, request.tolerance)
    if request.vertical is not None:
        split = Split.from_vertical(request.document.dim, request.vertical)
    else:
        split = algebra_file.split_of(request.document)
    return A, split


# === API Endpoints ===

@app.get("/")
async def root():
    """Health check endpoint."""
    return {
        "service": config.API_TITLE,
        "version": config.API_VERSION,
        "status": "running",
        "families": len(FAMILY_CATALOG),
    }


@app.post("/check")
async def check(request: CheckRequest):
    """Validation, Ricci data, foliation and Hermitian predicates of one algebra."""
    try:
        with log_request_timing('check') as timer:
            A, split = _structure(request)
            data, ok = report.check_report(A, split, request.document.labels)
    except LiefolError as e:
        _fail(e, '/check')
    app_logger.log_check(
        dim=A.dim,
        valid=ok,
        predicates={k: v for k, v in data.get('foliation', {}).items() if isinstance(v, bool)},
        response_time=timer.elapsed,
        status='success' if ok else 'invalid',
    )
    return data


@app.post("/classify")
async def classify(request: CheckRequest):
    """Normal form and family of a four-dimensional algebra (V defaults to Z, W)."""
    try:
        with log_request_timing('classify') as timer:
            A, split = _structure(request)
            data, ok = report.classify_report(A, split or Split.from_vertical(A.dim, config.VERTICAL_4D))
    except LiefolError as e:
        _fail(e, '/classify')
    result = data.get('classification', {})
    app_logger.log_classify(
        case=result.get('case'),
        family=result.get('family'),
        swapped=result.get('swapped', False),
        exact=data.get('normal_form', {}).get('exact', A.exact),
        response_time=timer.elapsed,
        status='success' if ok else 'failed',
    )
    if 'error' in data and data['error']['type'] == 'normalization':
        raise HTTPException(status_code=422, detail=data['error']['message'])
    return data


@app.get("/family/{family_id}")
async def get_family(family_id: str, seed: Optional[int] = None):
    """
    Catalog entry of a family. With a seed, also a sampled member as an
    algebra document.
    """
    try:
        fid = FamilyId.parse(family_id)
    except LiefolError as e:
        _fail(e, '/family', 404)
    data = {'family': FAMILY_CATALOG[fid].to_dict()}
    if seed is not None:
        params = sample_parameters(fid, random.Random(seed))
        section = algebra_file.FamilySection(
            id=fid.value,
            parameters={DISPLAY_NAMES[k]: format_scalar(v) for k, v in params.items()},
        )
        doc = algebra_file.from_structure_constants(
            assemble(family(fid, params)),
            Split.from_vertical(4, config.VERTICAL_4D),
            list(config.FRAME_LABELS_4D),
            section,
        )
        app_logger.log_family(fid.value, section.parameters)
        data['sample'] = doc.model_dump(mode='json', exclude_none=True)
    return data


@app.get("/series/nil/{n}")
async def series_nil(n: int, k: Optional[int] = None):
    """Ricci report of Nil^{n+2}, with the foliation predicates when k is given."""
    try:
        spec = NilSpec(n)
        data = report.series_report(spec, k)
    except LiefolError as e:
        _fail(e, '/series/nil')
    app_logger.log_series('nil', n, k)
    return data


@app.post("/series/sol")
async def series_sol(request: SolRequest):
    """Ricci report of Sol^{n+1} for the given alphas."""
    try:
        alphas = tuple(parse_rational(a) for a in request.alphas)
        spec = SolSpec(alphas)
        data = report.series_report(spec, request.k)
    except ValueError as e:
        _fail(e if isinstance(e, LiefolError) else LiefolError(str(e)), '/series/sol')
    app_logger.log_series('sol', spec.n, request.k)
    return data


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host=config.API_HOST, port=config.API_PORT)
