from typing import List, Optional

from pydantic import BaseModel

from .certificate import FRCertificate, PSTCertificate


class MirrorReport(BaseModel):
    symmetric: bool
    max_violation: float


class ParityReport(BaseModel):
    passed: bool
    max_violation: float


class InterlacingReport(BaseModel):
    interlaced: bool
    sign_changes: int


class InversionReport(BaseModel):
    passed: bool
    T: float
    phi: float
    max_deviation: float


class SpectrumOut(BaseModel):
    """Eigenvalues Q(x_s) of the Hamiltonian next to the bare x_s of J."""
    N: int
    x: List[float]
    eigenvalues: List[float]
    weights: List[float]
    parities: List[int]


class CyclePhase(BaseModel):
    label: str
    t: float
    mu_abs: float
    nu_abs: float
    leakage: float
    rel_phase: Optional[float] = None
    passed: bool


class CycleReport(BaseModel):
    passed: bool
    tau: float
    tol: float
    predicted_rel_phase: Optional[float] = None
    phases: List[CyclePhase]


class PSTCheck(BaseModel):
    certificate: PSTCertificate
    verification: InversionReport


class FRCheck(BaseModel):
    certificate: FRCertificate
    verification: CyclePhase
