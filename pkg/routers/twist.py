from fastapi import APIRouter

from core.schemas import PointVarietyRequest, TwistRequest
from services.algebra_orchestrator import algebra_orchestrator

router = APIRouter()


@router.post("/twist")
def twist(request: TwistRequest):
    """
    Twist a catalog algebra by φ.

    Parameters:
    - type, params, tower: the catalog entry
    - phi: the matrix in the expression grammar, e.g. "diag(1,1,2)"
    - check_geometric: also compare with the (G2) reconstruction of (E, τσ)
    """
    return algebra_orchestrator.twist(request.type, request.phi, request.params, request.tower,
                                      request.check_geometric)


@router.post("/pointvariety")
def point_variety(request: PointVarietyRequest):
    return algebra_orchestrator.point_variety(request.relations)
