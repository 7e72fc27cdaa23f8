"""Typer CLI — spheromo check / enumerate / kaehler / quadruple / inspect / reflective / init"""
import typer
from contextlib import contextmanager
from typing import List, Optional


def _build_env_template() -> str:
    """.env 템플릿 문자열 생성."""
    return (
        "# spheromo 환경변수\n"
        "# spheromo init 으로 생성됨\n"
        "\n"
        "# ── 데이터 테이블 ─────────────────────────────────────────────\n"
        "\n"
        "# LunaSTable / SocleRegistry 디렉토리 (luna_s.toml, socles.toml)\n"
        "# 미설정 시 패키지에 동봉된 tables/ 사용. 상대 경로는 BASE_DIR 기준.\n"
        "# SPHEROMO_DATA=tables\n"
        "\n"
        "# ── 실행 ──────────────────────────────────────────────────────\n"
        "\n"
        "# 로그 레벨 (stderr): DEBUG | INFO | WARNING | ERROR\n"
        "SPHEROMO_LOG_LEVEL=WARNING\n"
        "\n"
        "# enumerate / kaehler 의 기본 병렬 worker 수 (--jobs 로 재정의)\n"
        "SPHEROMO_JOBS=1\n"
        "\n"
        "# ── 시스템 ───────────────────────────────────────────────────\n"
        "\n"
        "# 프로젝트 루트 경로 (pip install -e . 로 editable 설치 시 자동 탐지됨)\n"
        "# 전역 설치 시 ~/.spheromo/ 가 자동 사용됨\n"
        "# SPHEROMO_BASE_DIR=/path/to/data-dir\n"
    )


app = typer.Typer(
    name="spheromo",
    add_completion=False,
    rich_markup_mode="rich",
    invoke_without_command=True,   # 서브커맨드 없이 실행 가능
    no_args_is_help=False,         # 직접 처리
)


def _version() -> str:
    try:
        import importlib.metadata
        return importlib.metadata.version("spheromo")
    except Exception:
        from spheromo import VERSION
        return VERSION


def _version_callback(value: bool):
    if value:
        typer.echo(f"spheromo {_version()}")
        raise typer.Exit()


@app.callback()
def main(
    ctx: typer.Context,
    version: Optional[bool] = typer.Option(
        None, "--version", "-V",
        help="버전 정보 표시 후 종료",
        callback=_version_callback,
        is_eager=True,
    ),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="DEBUG 로그를 stderr 로 출력"),
):
    """
    [bold cyan]spheromo[/bold cyan] — 구면 다양체 모멘텀 삼중쌍 판정기

    [dim](Ξ, Q, Σ) 의 허용성·매끄러움·반사성(Fano)을 정확한 유리수 산술로 판정하고,
    실패 시 위반된 공리와 재검증 가능한 witness 를 출력합니다.[/dim]

    ────────────────────────────────────────────────

    [bold]검사 레벨:[/bold]

      [cyan]q-admissible[/cyan]  Q-호환 + 쌍별 조건      [dim](별칭 q-momentum)[/dim]
      [cyan]admissible[/cyan]    + 정수 조건 (orbit vertex) [dim](별칭 momentum)[/dim]
      [cyan]smooth[/cyan]        + 국소 인수분해성·socle   [dim](smooth-r: 정수 조건 생략)[/dim]
      [cyan]q-reflexive[/cyan]   + 반표준 가중치 w 의 facet 조건
      [cyan]reflexive[/cyan]     + w 의 격자 조건 (Fano)

    ────────────────────────────────────────────────

    [bold]빠른 시작:[/bold]

    [green]  spheromo check foschi.json --level smooth[/green]     [dim]# Σ 하나 판정[/dim]
    [green]  spheromo enumerate pair.json --level admissible[/green] [dim]# 가능한 모든 Σ[/dim]
    [green]  spheromo kaehler pair.json[/green]                    [dim]# Kähler 구조 존재 여부[/dim]
    [green]  spheromo inspect foschi.json --show facets[/green]    [dim]# 조합론적 데이터 덤프[/dim]

    ────────────────────────────────────────────────

    [bold]종료 코드:[/bold] 0 pass · 1 fail · 2 입력 오류 · 3 미지원 (데이터 테이블에 없음)

    커맨드별 상세 도움말: [cyan]spheromo [커맨드] --help[/cyan]
    """
    import logging
    import sys
    from spheromo.core.config import config

    level = logging.DEBUG if verbose else getattr(logging, config.LOG_LEVEL, logging.WARNING)
    logging.basicConfig(
        level=level, stream=sys.stderr,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    )
    if verbose:
        logging.getLogger("spheromo").setLevel(logging.DEBUG)

    # 서브커맨드 없이 실행됐을 때는 간단한 요약만 출력
    if ctx.invoked_subcommand is None:
        typer.echo(
            f"spheromo v{_version()} — 구면 다양체 모멘텀 삼중쌍 판정기\n"
            "\n"
            "  spheromo init                      # 초기 설정 (.env 생성)\n"
            "  spheromo check FILE --level smooth # Σ 하나 판정\n"
            "  spheromo enumerate FILE            # 허용되는 모든 Σ\n"
            "  spheromo inspect FILE --show facets\n"
            "\n"
            "자세한 도움말: spheromo --help"
        )
        raise typer.Exit()


# ── 공통 헬퍼 ────────────────────────────────────────────────────────────────

_FORMAT_HELP = "출력 형식: [cyan]text[/cyan] | json"
_DATA_HELP = "LunaSTable / SocleRegistry 디렉토리 (기본: SPHEROMO_DATA 또는 동봉 tables/)"


@contextmanager
def _data_dir(path: Optional[str]):
    """--data-dir 을 이번 호출 동안만 config.DATA_DIR 에 반영"""
    import os
    from spheromo.core.config import config

    if not path:
        yield
        return
    previous = config.DATA_DIR
    config.DATA_DIR = os.path.abspath(path)
    try:
        yield
    finally:
        config.DATA_DIR = previous


@contextmanager
def _guard():
    """라이브러리 예외 → 종료 코드 (입력 오류 2, 미지원 3)"""
    from spheromo.core.constants import EXIT_INPUT_ERROR, EXIT_UNSUPPORTED
    from spheromo.core.errors import SpheromoError, UnsupportedError

    try:
        yield
    except UnsupportedError as e:
        typer.echo(f"미지원: {e}", err=True)
        raise typer.Exit(EXIT_UNSUPPORTED)
    except SpheromoError as e:
        typer.echo(f"입력 오류: {e}", err=True)
        raise typer.Exit(EXIT_INPUT_ERROR)


def _check_format(fmt: str) -> None:
    from spheromo.core.constants import REPORT_FORMATS
    from spheromo.core.errors import InputError

    if fmt not in REPORT_FORMATS:
        raise InputError(f"unknown format '{fmt}' (choose from {', '.join(REPORT_FORMATS)})")


def _emit(report, fmt: str, certificate: bool):
    from spheromo.core.utils.report import render

    typer.echo(render(report, fmt, certificate), nl=False)
    raise typer.Exit(report.exit_code)


def _load(path: str, need_sigma: Optional[bool]):
    """need_sigma: True 면 sigma 필수, False 면 금지, None 이면 상관없음"""
    from spheromo.core.data.document import load_input
    from spheromo.core.errors import InputError

    loaded = load_input(path)
    if need_sigma is True and not loaded.has_sigma:
        raise InputError(f"{path}: this command needs a 'sigma' field")
    if need_sigma is False and loaded.has_sigma:
        raise InputError(f"{path}: this command takes a pair (Ξ, Q); remove the 'sigma' field")
    return loaded


def _new_report(command: str, path: str):
    import os
    from spheromo.core.utils.report import Report, data_versions

    return Report(command=command, input=os.path.basename(path), data_versions=data_versions())


# ── 커맨드 ───────────────────────────────────────────────────────────────────

@app.command()
def check(
    input_file: str = typer.Argument(..., metavar="FILE", help="입력 문서 (.json / .toml)"),
    level: str = typer.Option("admissible", "--level", "-l", help="검사 레벨 (spheromo --help 참조)"),
    certificate: bool = typer.Option(False, "--certificate", "-c", help="witness 와 검사 trace 출력"),
    fmt: str = typer.Option("text", "--format", "-f", help=_FORMAT_HELP),
    data_dir: Optional[str] = typer.Option(None, "--data-dir", help=_DATA_HELP),
    scale: bool = typer.Option(False, "--scale", help="Σ 가 허용되는 최소 배수 n (nQ) 도 보고"),
):
    """
    [bold](Ξ, Q, Σ) 판정[/bold] — 한 레벨의 공리를 순서대로 검사, 첫 실패만 보고

    [bold]레벨:[/bold]
    [dim]  q-admissible | admissible | smooth | smooth-r | q-reflexive | reflexive[/dim]
    [dim]  (별칭: q-momentum = q-admissible, momentum = admissible)[/dim]

    [bold]예시:[/bold]
    [dim]  spheromo check sp6.json --level smooth --certificate[/dim]
    [dim]  spheromo check sp4.json --level reflexive --format json[/dim]
    [dim]  spheromo check sp6.json --level q-admissible --scale[/dim]
    """
    from spheromo.core.constants import CHECK_LEVELS
    from spheromo.core.engine.momentum import canonical_level, evaluate_level, scale_to_admissible
    from spheromo.core.errors import InputError
    from spheromo.core.utils.report import ReportEntry, finish, sigma_names

    with _guard(), _data_dir(data_dir):
        _check_format(fmt)
        canonical = canonical_level(level)
        if canonical not in CHECK_LEVELS:
            raise InputError(f"unknown level '{level}'")
        loaded = _load(input_file, need_sigma=True)
        pair, sigmas = loaded.pair, loaded.sigmas
        verdict = evaluate_level(pair, sigmas, canonical)
        extra = {}
        if scale:
            n, _ = scale_to_admissible(pair, sigmas)
            extra["scale"] = str(n) if n is not None else "none"
        report = _new_report("check", input_file)
        report.entries.append(ReportEntry(sigma=sigma_names(pair, sigmas), level=canonical, verdict=verdict, extra=extra))
        report = finish(report, verdict.status)
    _emit(report, fmt, certificate)


@app.command(name="enumerate")
def enumerate_cmd(
    input_file: str = typer.Argument(..., metavar="FILE", help="sigma 없는 입력 문서 (Ξ, Q)"),
    level: str = typer.Option("admissible", "--level", "-l", help="q-admissible | admissible | smooth | reflexive"),
    jobs: Optional[int] = typer.Option(None, "--jobs", "-j", help="병렬 worker 수 (기본: SPHEROMO_JOBS)"),
    certificate: bool = typer.Option(False, "--certificate", "-c", help="각 Σ 의 검사 trace 출력"),
    fmt: str = typer.Option("text", "--format", "-f", help=_FORMAT_HELP),
    data_dir: Optional[str] = typer.Option(None, "--data-dir", help=_DATA_HELP),
):
    """
    [bold]Σ 열거[/bold] — (Ξ, Q) 에 대해 레벨을 통과하는 모든 Σ (유한 개)

    결과는 크기 → 지지집합 → 계수 순으로 정렬되며 [cyan]--jobs[/cyan] 값과 무관하게 같습니다.
    데이터 테이블에 없는 경우는 unsupported 로 함께 표시됩니다.

    [bold]예시:[/bold]
    [dim]  spheromo enumerate foschi_pair.json --level admissible[/dim]
    [dim]  spheromo enumerate woodward_gl2.json --level q-admissible --jobs 4[/dim]
    """
    from spheromo.core.config import config
    from spheromo.core.constants import ENUMERATE_LEVELS
    from spheromo.core.engine.momentum import canonical_level, enumerate_sigma
    from spheromo.core.errors import InputError
    from spheromo.core.utils.report import ReportEntry, finish, overall_status, sigma_names

    with _guard(), _data_dir(data_dir):
        _check_format(fmt)
        canonical = canonical_level(level)
        if canonical not in ENUMERATE_LEVELS:
            raise InputError(f"unknown enumeration level '{level}'")
        loaded = _load(input_file, need_sigma=False)
        results = enumerate_sigma(loaded.pair, canonical, jobs or config.JOBS)
        report = _new_report("enumerate", input_file)
        for sigmas, verdict in results:
            report.entries.append(
                ReportEntry(sigma=sigma_names(loaded.pair, sigmas), level=canonical, verdict=verdict)
            )
        report.summary = f"{len(results)} Sigma at level {canonical}"
        report = finish(report, overall_status([v for _, v in results], any_pass=True))
    _emit(report, fmt, certificate)


@app.command()
def kaehler(
    input_file: str = typer.Argument(..., metavar="FILE", help="sigma 없는 입력 문서 (Ξ, P)"),
    jobs: Optional[int] = typer.Option(None, "--jobs", "-j", help="병렬 worker 수 (기본: SPHEROMO_JOBS)"),
    certificate: bool = typer.Option(False, "--certificate", "-c", help="각 Σ 의 검사 trace 출력"),
    fmt: str = typer.Option("text", "--format", "-f", help=_FORMAT_HELP),
    data_dir: Optional[str] = typer.Option(None, "--data-dir", help=_DATA_HELP),
):
    """
    [bold]Kähler 판정[/bold] — 다중도 자유 다양체 (Ξ, P) 의 호환 복소 구조

    매끄러운 R-모멘텀 삼중쌍 (Ξ, P, Σ) 을 주는 모든 Σ 를 나열합니다.
    하나도 없으면 [yellow]not Kählerizable[/yellow] (종료 코드 1).

    [bold]예시:[/bold]
    [dim]  spheromo kaehler woodward_gl2.json[/dim]
    """
    from spheromo.core.config import config
    from spheromo.core.constants import LEVEL_SMOOTH_R, STATUS_PASS
    from spheromo.core.engine.colored import kaehler_check
    from spheromo.core.utils.report import ReportEntry, finish, overall_status, sigma_names

    with _guard(), _data_dir(data_dir):
        _check_format(fmt)
        loaded = _load(input_file, need_sigma=False)
        results = kaehler_check(loaded.pair, jobs or config.JOBS)
        report = _new_report("kaehler", input_file)
        for sigmas, verdict in results:
            report.entries.append(
                ReportEntry(sigma=sigma_names(loaded.pair, sigmas), level=LEVEL_SMOOTH_R, verdict=verdict)
            )
        status = overall_status([v for _, v in results], any_pass=True)
        report.summary = "Kählerizable" if status == STATUS_PASS else "not Kählerizable"
        report = finish(report, status)
    _emit(report, fmt, certificate)


@app.command()
def quadruple(
    input_file: str = typer.Argument(..., metavar="FILE", help="quadruple 블록이 있는 입력 문서"),
    certificate: bool = typer.Option(False, "--certificate", "-c", help="witness 와 검사 trace 출력"),
    fmt: str = typer.Option("text", "--format", "-f", help=_FORMAT_HELP),
    data_dir: Optional[str] = typer.Option(None, "--data-dir", help=_DATA_HELP),
):
    """
    [bold]모멘텀 사중쌍 판정[/bold] — P(V) 위의 사영 구면 다양체로 실현 가능한지

    sigma 가 있으면 그 Σ 만, 없으면 카탈로그의 모든 부분집합 Σ 를 검사합니다.
    하나라도 통과하면 종료 코드 0.

    [bold]예시:[/bold]
    [dim]  spheromo quadruple sl2xsl2.json[/dim]
    """
    from itertools import combinations
    from spheromo.core.data.document import quadruple_data
    from spheromo.core.engine.momentum import quadruple_check
    from spheromo.core.utils.report import ReportEntry, finish, overall_status, sigma_names

    with _guard(), _data_dir(data_dir):
        _check_format(fmt)
        loaded = _load(input_file, need_sigma=None)
        generators, weights = quadruple_data(loaded)
        vertices = loaded.pair.polytope.vertices
        if loaded.has_sigma:
            candidates = [loaded.sigmas]
        else:
            catalog = loaded.system.catalog
            candidates = [list(c) for size in range(len(catalog) + 1) for c in combinations(catalog, size)]
        report = _new_report("quadruple", input_file)
        verdicts = []
        for sigmas in candidates:
            verdict = quadruple_check(loaded.system, generators, weights, vertices, sigmas, loaded.pair.table)
            verdicts.append(verdict)
            report.entries.append(
                ReportEntry(sigma=sigma_names(loaded.pair, sigmas), level="quadruple", verdict=verdict)
            )
        passing = sum(1 for v in verdicts if v.passed)
        report.summary = f"{passing} of {len(verdicts)} Sigma give a momentum quadruple"
        report = finish(report, overall_status(verdicts, any_pass=True))
    _emit(report, fmt, certificate)


def _inspect_lines(what: str, loaded) -> List[str]:
    """inspect --show 항목별 텍스트 줄"""
    from spheromo.core.engine.colored import (
        color_table, colored_fan, delzant_check, face_has_divisor, localized_socles, simple_check,
    )
    from spheromo.core.engine.momentum import anticanonical_weight, sigma_orbit_vertices
    from spheromo.core.engine.polykernel import orbit_faces
    from spheromo.core.utils.exact import format_rational, format_vector

    pair = loaded.pair
    polytope = pair.polytope
    sigmas = loaded.sigmas or []

    def label(face) -> str:
        return "{" + ", ".join(f"v{j + 1}" for j in sorted(face)) + "}"

    if what == "facets":
        return [f"rho = {format_vector(f.normal)}, m = {format_rational(f.offset)}, vertices {label(f.vertices)}"
                for f in polytope.facets]
    if what == "orbit-faces":
        weights = [pair.system.sigma_weight(s) for s in sigmas]
        lines = [f"{label(face)} dim {polytope.face_dim(face)}" for face in orbit_faces(polytope, weights)]
        ov = sigma_orbit_vertices(pair, sigmas)
        lines.append("orbit vertices: " + ", ".join(
            f"v{j + 1} = {format_vector(polytope.vertices[j])}" for j in ov))
        return lines
    if what == "colors":
        table = color_table(pair, sigmas)
        lines = [f"w = {format_vector(table.reference)}"]
        for c in table.colors:
            moved = ", ".join(pair.system.root_name(i) for i in sorted(c.moved_by))
            lines.append(f"{c.name}: rho = {format_vector(c.rho)}, n = {format_rational(c.offset)}, moved by {moved}")
        return lines
    if what == "colored-fan":
        fan = colored_fan(pair, sigmas)
        return [
            f"{label(cc.face)}: cone{{{', '.join(format_vector(r) for r in cc.rays)}}}, "
            f"colors {{{', '.join(sorted(cc.colors))}}}"
            for cc in fan.cones
        ]
    if what == "socles":
        lines = []
        for s in localized_socles(pair, sigmas):
            lines.append(
                f"{s.data.label}: S = {pair.system.diagram_type(s.data.s_roots) or '-'}, key {s.key}, "
                f"D = {{{', '.join(s.data.colors)}}}, B = {{{', '.join(format_vector(r) for r in s.data.b_rays)}}}, "
                f"pairings [{', '.join(format_rational(x) for x in s.other_pairings)}]"
            )
        return lines
    if what == "anticanonical":
        return [f"w = {format_vector(anticanonical_weight(pair.system, polytope))}"]
    if what == "face-divisors":
        return [f"{format_vector(f.normal)}: {clause or 'none'}" for f, clause in face_has_divisor(pair, sigmas)]
    if what == "delzant":
        out = []
        for name, verdict in (("simple", simple_check(polytope)), ("delzant", delzant_check(polytope))):
            msg = f" ({verdict.certificate.message})" if verdict.certificate else ""
            out.append(f"{name}: {verdict.status}{msg}")
        return out
    return []


@app.command()
def inspect(
    input_file: str = typer.Argument(..., metavar="FILE", help="입력 문서 (sigma 없으면 Σ = ∅)"),
    show: List[str] = typer.Option(["facets"], "--show", "-s", help="facets | orbit-faces | colors | colored-fan | socles | anticanonical | face-divisors | delzant (반복 가능)"),
    fmt: str = typer.Option("text", "--format", "-f", help=_FORMAT_HELP),
    data_dir: Optional[str] = typer.Option(None, "--data-dir", help=_DATA_HELP),
):
    """
    [bold]조합론적 데이터 덤프[/bold] — facet, orbit face, color, colored fan, 국소 socle 등

    [bold]예시:[/bold]
    [dim]  spheromo inspect foschi.json --show facets[/dim]
    [dim]  spheromo inspect sp6.json --show colors --show socles[/dim]
    """
    from spheromo.core.constants import SHOW_CHOICES, STATUS_PASS
    from spheromo.core.errors import InputError
    from spheromo.core.utils.report import Section, finish

    with _guard(), _data_dir(data_dir):
        _check_format(fmt)
        bad = [s for s in show if s not in SHOW_CHOICES]
        if bad:
            raise InputError(f"unknown --show item '{bad[0]}' (choose from {', '.join(SHOW_CHOICES)})")
        loaded = _load(input_file, need_sigma=None)
        report = _new_report("inspect", input_file)
        for what in show:
            report.sections.append(Section(title=what, lines=_inspect_lines(what, loaded)))
        report = finish(report, STATUS_PASS)
    _emit(report, fmt, False)


@app.command()
def reflective(
    input_file: str = typer.Argument(..., metavar="FILE", help="입력 문서 (Ξ, P)"),
    certificate: bool = typer.Option(False, "--certificate", "-c", help="witness 출력"),
    fmt: str = typer.Option("text", "--format", "-f", help=_FORMAT_HELP),
    data_dir: Optional[str] = typer.Option(None, "--data-dir", help=_DATA_HELP),
):
    """
    [bold]반사 다면체 판정[/bold] — reflective · simple · Woodward facet 조건 · Delzant

    종료 코드는 reflective 판정만 따릅니다. 나머지는 참고용으로 함께 출력됩니다.

    [bold]예시:[/bold]
    [dim]  spheromo reflective gl2_reflective.json --certificate[/dim]
    """
    from spheromo.core.engine.colored import (
        delzant_check, reflective_check, simple_check, woodward_facet_condition,
    )
    from spheromo.core.utils.report import ReportEntry, finish

    with _guard(), _data_dir(data_dir):
        _check_format(fmt)
        loaded = _load(input_file, need_sigma=None)
        pair = loaded.pair
        checks = [
            ("reflective", reflective_check(loaded.system, pair.polytope)),
            ("simple", simple_check(pair.polytope)),
            ("woodward", woodward_facet_condition(pair)),
            ("delzant", delzant_check(pair.polytope)),
        ]
        report = _new_report("reflective", input_file)
        for name, verdict in checks:
            report.entries.append(ReportEntry(sigma=[], level=name, verdict=verdict))
        report = finish(report, checks[0][1].status)
    _emit(report, fmt, certificate)


@app.command()
def init(
    force: bool = typer.Option(False, "--force", help="기존 .env 가 있어도 덮어쓰기"),
):
    """
    [bold]초기 설정[/bold] — .env 환경변수 템플릿 생성

    [bold]생성 위치:[/bold]
    [dim]  pip install -e .    →  (프로젝트루트)/.env[/dim]
    [dim]  pip install         →  ~/.spheromo/.env[/dim]

    [bold]예시:[/bold]
    [dim]  spheromo init[/dim]
    [dim]  spheromo init --force   # 기존 파일 덮어쓰기[/dim]
    """
    from pathlib import Path
    from spheromo.core.config import config

    env_file = Path(config.BASE_DIR) / ".env"
    typer.echo(f"생성 위치: {env_file}")

    if env_file.exists() and not force:
        typer.echo(".env 파일이 이미 존재합니다. 덮어쓰려면 --force 옵션을 사용하세요.")
        typer.echo(f"  편집: ${{EDITOR:-nano}} {env_file}")
        return

    env_file.parent.mkdir(parents=True, exist_ok=True)
    env_file.write_text(_build_env_template(), encoding="utf-8")
    typer.echo(".env 파일을 생성했습니다.")
    typer.echo(f"  경로: {env_file}")
