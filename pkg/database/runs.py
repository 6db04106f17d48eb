"""Run archive: save, list and fetch CLI results."""
import hashlib
import re
from typing import Optional

from sqlalchemy import select
from sqlalchemy.ext.asyncio import AsyncSession

from .models import Run

# Delimiter for run identifiers (avoids clashing with '-' in instance names)
RUN_ID_DELIM = "__"


def make_run_identifier(command: str, source: str) -> str:
    """Build identifier: command__<first 16 hex digits of sha256(source)>."""
    safe_command = re.sub(r"[^\w\-]", "", command) or "run"
    digest = hashlib.sha256(source.encode("utf-8")).hexdigest()[:16]
    return f"{safe_command}{RUN_ID_DELIM}{digest}"


async def save_run(session: AsyncSession, command: str, source: str, report_json: str) -> str:
    """Save a report to the runs table. Upserts by identifier."""
    identifier = make_run_identifier(command, source)
    existing = (
        await session.execute(select(Run).where(Run.identifier == identifier))
    ).scalar_one_or_none()
    if existing:
        existing.report_data = report_json
    else:
        session.add(
            Run(identifier=identifier, command=command, source=source[:255], report_data=report_json)
        )
    await session.flush()
    return identifier


async def list_runs(session: AsyncSession) -> list[Run]:
    """All archived runs, newest first."""
    return list((await session.execute(select(Run).order_by(Run.created_at.desc()))).scalars().all())


async def get_run(session: AsyncSession, identifier: str) -> Optional[Run]:
    return (
        await session.execute(select(Run).where(Run.identifier == identifier))
    ).scalar_one_or_none()
