from pydantic_settings import BaseSettings
from dotenv import load_dotenv

load_dotenv()

class Settings(BaseSettings):
    PROJECT_NAME: str = "PST Chain Toolkit"
    VERSION: str = "1.0.0"
    API_V1_STR: str = "/api/v1"

    # verification tolerance, overridable through the environment
    PSTCHAIN_TOL: float = 1e-9

    RATIONALIZE_TOL: float = 1e-9
    RATIONALIZE_MAX_DEN: int = 10_000

    JACOBI_TOL: float = 1e-13
    JACOBI_MAX_SWEEPS: int = 30

    SCAN_CHUNK: int = 4096

    LOG_LEVEL: str = "INFO"

    class Config:
        case_sensitive = True

settings = Settings()
