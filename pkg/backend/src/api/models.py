from pydantic import BaseModel, Field
from typing import Dict, List, Optional

from src.catalog.verifier import Report


class Term(BaseModel):
    exponent: int
    coefficient: str = Field(..., description="Exact rational, printed as num/den when not integral")


class CoeffsRequest(BaseModel):
    """Request model for the coefficients endpoint"""
    expr: str = Field(..., description="Expression in the identity language")
    order: int = Field(30, description="Truncation order", ge=0, le=400)
    params: Dict[str, int] = Field(default_factory=dict, description="Parameter bindings")


class CoeffsResponse(BaseModel):
    expr: str
    order: int
    terms: List[Term]


class StringRequest(BaseModel):
    p: int = Field(..., ge=1)
    pprime: int = Field(..., ge=2)
    m: int
    ell: int = Field(..., ge=0)
    order: int = Field(30, ge=0, le=400)


class VerifyRequest(BaseModel):
    """Verify one catalog identity, at one assignment or over its whole range"""
    name: str
    params: Optional[Dict[str, int]] = Field(None, description="Single assignment; omit for every instance")
    order: int = Field(30, ge=0, le=200)


class VerifyResponse(BaseModel):
    name: str
    ok: bool
    reports: List[Report]


class IdentityInfo(BaseModel):
    name: str
    anchor: str
    source: Optional[str]
    params: str = Field(..., description="Declared ranges, e.g. 'r in 0..1 s in 0..6'")
    instances: int
