from fastapi import APIRouter

from core.schemas import TypeRequest
from services.algebra_orchestrator import algebra_orchestrator

router = APIRouter()


@router.get("/catalog")
def catalog_list():
    """Every catalog type at its default parameters, with the available towers."""
    return algebra_orchestrator.catalog_list()


@router.post("/catalog/show")
def catalog_show(request: TypeRequest):
    return algebra_orchestrator.catalog_show(request.type, request.params, request.tower)
