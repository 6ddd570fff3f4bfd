from .app import create_app, serve
from .store import GraphEntry, LayoutJob, RunEntry, Session, SessionStore

__all__ = [
    "GraphEntry",
    "LayoutJob",
    "RunEntry",
    "Session",
    "SessionStore",
    "create_app",
    "serve",
]
