# api/commands/__init__.py
from api.commands.commands import cli
