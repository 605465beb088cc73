from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from ..common.enums import Command, OutputFormat

Scalar = Union[str, float, int]


class ChainRequest(BaseModel):
    """Chain parameters and run options shared by the CLI and the HTTP API.

    alpha and beta accept exact strings ("1", "3/2") or decimals; t and t_max
    accept multiples of pi ("pi/2", "2pi") or decimals.
    """
    model_config = ConfigDict(extra="forbid")

    N: int = Field(ge=1)
    alpha: Scalar = "0"
    beta: Scalar = "1"
    t: Optional[Scalar] = None
    t_max: Optional[Scalar] = None
    steps: int = Field(default=1001, ge=2)
    source: int = Field(default=0, ge=0)
    multiplier: int = Field(default=1, ge=1)
    tol: Optional[float] = Field(default=None, gt=0)


class RunConfig(ChainRequest):
    command: Command
    output: Optional[str] = None
    format: Optional[OutputFormat] = None

    def resolved_format(self) -> OutputFormat:
        if self.format is not None:
            return self.format
        return OutputFormat.CSV if self.command == Command.SCAN else OutputFormat.JSON
