from datetime import datetime
from sqlalchemy import Column, DateTime, Integer, String, Text
from sqlalchemy.orm import DeclarativeBase


class Base(DeclarativeBase):
    pass


class Run(Base):
    """Archived CLI result, keyed by command__input-digest."""
    __tablename__ = "runs"

    id = Column(Integer, primary_key=True, autoincrement=True)
    identifier = Column(String(255), unique=True, nullable=False, index=True)
    command = Column(String(50), nullable=False)  # entropy, p1, p2, ...
    source = Column(String(255), nullable=True)  # input file, instance name or inline spec
    report_data = Column(Text, nullable=False)  # JSON string for SQLite compatibility
    created_at = Column(DateTime, default=datetime.utcnow)
    updated_at = Column(DateTime, default=datetime.utcnow, onupdate=datetime.utcnow)
