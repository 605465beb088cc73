from typing import Any

from fastapi import APIRouter, HTTPException

from pstchain.common.enums import Command, HTTPStatus
from pstchain.common.logger import logger
from pstchain.common.response import AppResponse
from pstchain.dto.run import ChainRequest
from pstchain.service.runner import RunService


router = APIRouter()
run_service = RunService()


@router.get("/commands", response_model=AppResponse[list], status_code=HTTPStatus.OK.value)
async def list_commands():
    return AppResponse.success_response(
        status_code=HTTPStatus.OK,
        message="Available commands",
        data=[command.value for command in Command]
    )

@router.post("/{command}", response_model=AppResponse[Any], status_code=HTTPStatus.OK.value)
async def run_command(command: Command, request: ChainRequest):
    logger.info(f"HTTP {command.value}: {request}")
    response = run_service.run(command, request)
    if not response.success:
        raise HTTPException(
            status_code=response.status_code,
            detail=response.message
        )
    return response
