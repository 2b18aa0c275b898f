import logging

from fastapi import APIRouter, HTTPException

from core.schemas import ClassifyRequest, VerifyRequest
from services.algebra_orchestrator import algebra_orchestrator

router = APIRouter()
logger = logging.getLogger(__name__)


@router.post("/classify")
def classify(request: ClassifyRequest):
    """Z(E,σ), M(E,σ) and N(E,σ) of a catalog algebra, with the twist family."""
    return algebra_orchestrator.classify(request.type, request.params, request.tower,
                                         request.certificates, request.seed)


@router.post("/verify")
def verify(request: VerifyRequest):
    """
    Run one acceptance suite.

    Raises:
    - HTTPException 404: unknown suite
    """
    if request.suite not in algebra_orchestrator.suites():
        raise HTTPException(status_code=404, detail=f"Unknown suite {request.suite}")
    logger.info(f"Running suite {request.suite} over HTTP")
    return algebra_orchestrator.verify(request.suite, request.seed)
