"""Optional HTTP wrapper around the library (needs fastapi and pydantic)."""
from __future__ import annotations

import json
from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .exactalg import to_json
from .methods import METHODS, compute_coeffs

Method = Literal["oracle", "catalytic", "onecat", "closedform0", "closedform1", "sixvertex"]
Suite = Literal["all", "involution", "symmetry", "odes", "omega_minus1", "weights"]


class CoeffsRequest(BaseModel):
    method: Method = "onecat"
    order: int = Field(12, ge=1, le=40)
    omega: Optional[str] = None
    v: Optional[str] = None


class CoeffsResponse(BaseModel):
    method: str
    order: int
    omega: Optional[str]
    v: Optional[str]
    Q: list[str]
    R: Optional[list[str]] = None
    canonical: dict


class VerifyRequest(BaseModel):
    suite: Suite = "all"
    order: int = Field(10, ge=3, le=14)
    perturb: bool = False


class CheckRow(BaseModel):
    suite: str
    name: str
    ok: bool
    order: int
    detail: str
    seconds: float


class VerifyResponse(BaseModel):
    ok: bool
    checks: list[CheckRow]


def create_app() -> FastAPI:
    app = FastAPI(title="eulerorient")

    @app.get("/health")
    def health():
        return {"status": "ok", "methods": list(METHODS)}

    @app.post("/coeffs", response_model=CoeffsResponse)
    def coeffs(req: CoeffsRequest):
        try:
            tab = compute_coeffs(req.method, req.order, req.omega, req.v)
        except ValueError as e:
            raise HTTPException(status_code=422, detail=str(e))
        return CoeffsResponse(
            method=tab.method, order=tab.order,
            omega=None if tab.omega is None else str(tab.omega),
            v=None if tab.v is None else str(tab.v),
            Q=[str(c) for c in tab.Q.c],
            R=None if tab.R is None else [str(c) for c in tab.R.c],
            canonical=json.loads(to_json(tab.Q)),
        )

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest):
        from .verify import report, run_suite
        return report(run_suite(req.suite, req.order, req.perturb))

    return app
