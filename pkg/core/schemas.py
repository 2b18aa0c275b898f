"""
Pydantic models for certificates and for the HTTP request bodies.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

SCHEMA_VERSION = "twistalg/1"


class CheckRecord(BaseModel):
    """One certified check: what was checked, whether it passed, and how."""
    check: str
    passed: bool
    detail: str = ""


class Certificate(BaseModel):
    passed: bool
    checks: List[CheckRecord] = Field(default_factory=list)

    def add(self, check: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(CheckRecord(check=check, passed=passed, detail=detail))
        if not passed:
            self.passed = False
        return passed


class TypeRequest(BaseModel):
    type: str
    params: Dict[str, str] = Field(default_factory=dict)
    tower: Optional[str] = None


class ClassifyRequest(TypeRequest):
    certificates: bool = False
    seed: Optional[int] = None


class TwistRequest(TypeRequest):
    phi: str
    check_geometric: bool = False


class PointVarietyRequest(BaseModel):
    relations: Dict[str, Any]


class CurveRequest(BaseModel):
    lam: str = Field(alias="lambda")
    tower: Optional[str] = None
    p: Optional[str] = None
    q: Optional[str] = None
    n: Optional[int] = None

    model_config = {"populate_by_name": True}


class VerifyRequest(BaseModel):
    suite: str
    seed: Optional[int] = None
