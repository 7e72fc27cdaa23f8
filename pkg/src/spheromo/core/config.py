import os
from pathlib import Path
from dotenv import load_dotenv


def _resolve_base_dir() -> str:
    """작업 루트 결정.

    우선순위:
    1) SPHEROMO_BASE_DIR 환경변수 (임의 경로 지정 시)
    2) __file__ 기준 4단계 상위에 pyproject.toml이 있으면 프로젝트 루트
       (editable install: src/spheromo/core/ → src/spheromo/ → src/ → 루트/)
    3) ~/.spheromo/ — 전역 설치 시 사용자 홈 디렉토리
    """
    from_env = os.getenv("SPHEROMO_BASE_DIR")
    if from_env:
        return os.path.abspath(from_env)

    candidate = os.path.dirname(
        os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
    )
    if os.path.isfile(os.path.join(candidate, "pyproject.toml")):
        return candidate

    return os.path.join(os.path.expanduser("~"), ".spheromo")


# Step 1: CWD 기준 .env 로드
load_dotenv()

# Step 2: BASE_DIR 결정 (위에서 로드한 SPHEROMO_BASE_DIR 반영)
_BASE_DIR = _resolve_base_dir()

# Step 3: BASE_DIR/.env 추가 로드 (spheromo init 이 생성한 .env)
#         override=False → 시스템 환경변수 및 CWD .env 값을 덮어쓰지 않음
_env_in_base = Path(_BASE_DIR) / ".env"
if _env_in_base.exists():
    load_dotenv(dotenv_path=_env_in_base, override=False)

# 패키지에 동봉된 기본 데이터 테이블 위치
_PACKAGED_TABLES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "tables")


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name, "")
    try:
        return max(1, int(raw)) if raw else default
    except ValueError:
        return default


class Config:
    # Version: __init__.py 단일 소스에서 참조
    from spheromo import VERSION

    BASE_DIR = _BASE_DIR

    # 데이터 테이블 (LunaSTable / SocleRegistry): 상대 경로는 BASE_DIR 기준
    _data_raw = os.getenv("SPHEROMO_DATA", _PACKAGED_TABLES)
    DATA_DIR = _data_raw if os.path.isabs(_data_raw) else os.path.join(BASE_DIR, _data_raw)
    LUNA_TABLE_FILE = "luna_s.toml"
    SOCLE_TABLE_FILE = "socles.toml"

    # 로깅: 리포트(stdout)와 분리되어 stderr 로만 출력
    LOG_LEVEL = os.getenv("SPHEROMO_LOG_LEVEL", "WARNING").upper()

    # Σ 열거 병렬 worker 수 (CLI --jobs 로 재정의)
    JOBS = _int_env("SPHEROMO_JOBS", 1)


config = Config()
