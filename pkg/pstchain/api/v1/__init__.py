from fastapi import APIRouter
from .endpoints import chains

router = APIRouter()

router.include_router(chains.router, prefix="/chains", tags=["chains"])
