from fastapi import APIRouter, HTTPException

from core.schemas import CurveRequest
from services.algebra_orchestrator import CURVE_OPS, algebra_orchestrator

router = APIRouter()


@router.post("/curve/{op}")
def curve(op: str, request: CurveRequest):
    """
    Group law on the Hesse curve with parameter ``lambda``.

    op is one of add (p, q), neg (p), mul (p, n), torsion (n) or j.
    """
    if op not in CURVE_OPS:
        raise HTTPException(status_code=404, detail=f"Unknown curve operation {op}")
    return algebra_orchestrator.curve(op, request.lam, request.tower, p=request.p, q=request.q, n=request.n)
