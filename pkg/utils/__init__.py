# utils/__init__.py
from utils.content_filters import ContentFilter
from utils.io_utils import IOUtils
from utils.number_format import round_half_up, display_support

__all__ = ['ContentFilter', 'IOUtils', 'round_half_up', 'display_support']
