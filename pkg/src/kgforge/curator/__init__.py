"""Human-in-the-loop curation: flag store, decisions, audit, HTTP service."""

from .store import AuditLog, ConflictError, Decision, DecisionError, FlagStore, replay_audit

__all__ = [
    "AuditLog",
    "ConflictError",
    "Decision",
    "DecisionError",
    "FlagStore",
    "replay_audit",
    "create_app",
]


def create_app(*args, **kwargs):
    from .service import create_app as _create_app

    return _create_app(*args, **kwargs)
