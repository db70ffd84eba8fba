# config.py
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict

from src.purimetrics.core import Tolerances


class Settings(BaseSettings):
    """
    프로젝트 전역 설정 관리 (Pydantic V2)
    .env 파일 또는 환경 변수에서 값을 읽고, 없으면 기본값을 사용합니다.
    """

    # Project Info
    PROJECT_NAME: str = "Purimetrics"
    VERSION: str = "1.0.0"

    # Validation tolerances (density-core / bloch-basis)
    HERMITICITY_TOL: float = 1e-10
    TRACE_TOL: float = 1e-10
    PSD_TOL: float = 1e-10
    POWER_TOL: float = 1e-12
    PURE_NORM_TOL: float = 1e-8

    # 전역 override: 설정되면 hermiticity / trace / psd 허용오차를 모두 대체
    PURIMETRICS_TOL: Optional[float] = None

    # Measure / analysis thresholds
    ZERO_EIGENVALUE: float = 1e-14
    DEAD_ZONE: float = 1e-12
    SPECTRUM_INPUT_TOL: float = 1e-6

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_DIR: str = "./logs"
    LOG_TO_FILE: bool = False

    # .env 파일 로드 설정
    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8")

    def tolerances(self) -> Tolerances:
        """현재 설정으로 Tolerances 값 객체를 만든다."""
        if self.PURIMETRICS_TOL is not None:
            tol = self.PURIMETRICS_TOL
            return Tolerances(
                hermiticity=tol,
                trace=tol,
                psd=tol,
                power=self.POWER_TOL,
                pure_norm=self.PURE_NORM_TOL,
            )
        return Tolerances(
            hermiticity=self.HERMITICITY_TOL,
            trace=self.TRACE_TOL,
            psd=self.PSD_TOL,
            power=self.POWER_TOL,
            pure_norm=self.PURE_NORM_TOL,
        )


# 싱글톤 인스턴스 생성
settings = Settings()
