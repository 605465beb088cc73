from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .api.v1 import router as v1_router
from .common.enums import HTTPStatus
from .common.exceptions import PSTChainError
from .common.logger import logger
from .common.response import AppResponse
from .core.config import settings


def create_app() -> FastAPI:
    app = FastAPI(
        title=settings.PROJECT_NAME,
        version=settings.VERSION,
        openapi_url="/api/openapi.json"
    )

    # read-only numerical API, open to any origin
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET", "POST"],
        allow_headers=["*"],
    )

    @app.exception_handler(PSTChainError)
    async def toolkit_error_handler(request: Request, exc: PSTChainError):
        logger.error(f"{request.url.path}: {exc}")
        body = AppResponse.error_response(status_code=HTTPStatus.BAD_REQUEST, message=str(exc))
        return JSONResponse(status_code=HTTPStatus.BAD_REQUEST.value, content=body.model_dump())

    app.include_router(v1_router, prefix=settings.API_V1_STR)

    @app.get("/")
    async def root():
        return {"message": f"Welcome to {settings.PROJECT_NAME}", "version": settings.VERSION}

    return app


app = create_app()
