"""
Módulo de configuração da bancada de cálculos concorrentes.
Centraliza limites de exploração, orçamentos de simulação e opções de log.
"""

from pathlib import Path

from dotenv import load_dotenv
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

# Carrega variáveis de ambiente do arquivo .env
load_dotenv()

# Diretório base do projeto
BASE_DIR = Path(__file__).parent.parent.absolute()


class Settings(BaseSettings):
    """Configurações da aplicação."""

    model_config = SettingsConfigDict(
        case_sensitive=True,
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
        populate_by_name=True,
    )

    # Configurações básicas
    DEBUG: bool = Field(default=False, validation_alias="DEBUG")
    ENVIRONMENT: str = Field(default="development", validation_alias="ENVIRONMENT")

    # Configurações de log
    LOG_LEVEL: str = Field(default="INFO", validation_alias="LOG_LEVEL")
    LOG_FILE: Path = Field(default=BASE_DIR / "logs" / "mm.log", validation_alias="LOG_FILE")

    # Exploração e escalonamento
    MAX_STATES: int = Field(default=200_000, validation_alias="MM_MAX_STATES")
    EXPLORE_DEPTH: int = Field(default=200, validation_alias="MM_EXPLORE_DEPTH")
    RUN_FUEL: int = Field(default=10_000, validation_alias="MM_RUN_FUEL")
    GUARD_FUEL: int = Field(default=10_000, validation_alias="MM_GUARD_FUEL")

    # Orçamentos da busca de testemunhas de simulação
    A2C_BUDGET: int = Field(default=16, validation_alias="MM_A2C_BUDGET")
    C2A_BUDGET: int = Field(default=32, validation_alias="MM_C2A_BUDGET")
    SELRECV_BUDGET: int = Field(default=64, validation_alias="MM_SELRECV_BUDGET")
    SELRECV_MAX_MAILBOX: int = Field(default=4, validation_alias="MM_SELRECV_MAX_MAILBOX")
    SIMULATION_DEPTH: int = Field(default=20, validation_alias="MM_SIMULATION_DEPTH")

    # Geração de programas
    FUZZ_SIZE: int = Field(default=4, validation_alias="MM_FUZZ_SIZE")

    # Normalização: permutações tentadas para desempatar nomes simétricos
    CANON_PERMUTATION_CAP: int = Field(default=720, validation_alias="MM_CANON_PERMUTATION_CAP")

    @field_validator(
        "MAX_STATES", "EXPLORE_DEPTH", "RUN_FUEL", "GUARD_FUEL", "A2C_BUDGET",
        "C2A_BUDGET", "SELRECV_BUDGET", "SELRECV_MAX_MAILBOX", "SIMULATION_DEPTH",
        "FUZZ_SIZE", "CANON_PERMUTATION_CAP",
    )
    @classmethod
    def validate_positive(cls, v: int) -> int:
        if v <= 0:
            raise ValueError("limites e orçamentos devem ser positivos")
        return v

    @field_validator("LOG_FILE")
    @classmethod
    def validate_log_file(cls, v: Path) -> Path:
        # Garante que o diretório de logs existe
        v.parent.mkdir(parents=True, exist_ok=True)
        return v

    @field_validator("LOG_LEVEL")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        return v.upper()


# Instância única de configurações
settings = Settings()
