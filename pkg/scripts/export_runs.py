"""
Export the run archive to CSV.
Usage: python -m scripts.export_runs
Writes to data/runs.csv
"""
import asyncio
import csv
from pathlib import Path

from database.connection import close_db, get_db, init_db
from database.runs import list_runs

OUTPUT_DIR = Path(__file__).resolve().parent.parent / "data"
COLUMNS = ["id", "identifier", "command", "source", "created_at", "updated_at", "report_data"]


async def export_all(output_dir: Path = OUTPUT_DIR) -> Path:
    await init_db()
    output_dir.mkdir(exist_ok=True)

    try:
        async with get_db() as session:
            rows = await list_runs(session)
    finally:
        await close_db()
    path = output_dir / "runs.csv"
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(COLUMNS)
        for r in rows:
            w.writerow([getattr(r, c) for c in COLUMNS])
    print(f"Wrote {path} ({len(rows)} rows)")
    return path


if __name__ == "__main__":
    asyncio.run(export_all())
