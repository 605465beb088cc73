from typing import Generic, TypeVar, Optional
from pydantic import BaseModel
from .enums import ExitStatus

T = TypeVar('T')

class AppResponse(BaseModel, Generic[T]):
    status_code: int
    success: bool
    message: str
    exit_status: int = ExitStatus.OK
    data: Optional[T] = None

    @staticmethod
    def success_response(
        *, status_code: int, message: str, data: Optional[T] = None,
        exit_status: int = ExitStatus.OK,
    ) -> "AppResponse[T]":
        return AppResponse(
            status_code=status_code,
            success=True,
            message=message,
            exit_status=exit_status,
            data=data
        )

    @staticmethod
    def error_response(
        *, status_code: int, message: str, exit_status: int = ExitStatus.USAGE_ERROR,
    ) -> "AppResponse[T]":
        return AppResponse(
            status_code=status_code,
            success=False,
            message=message,
            exit_status=exit_status,
            data=None
        )
