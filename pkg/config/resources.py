from pathlib import Path
from dotenv import load_dotenv
from nltk.stem import PorterStemmer
from config.settings import settings

# Load environment variables
load_dotenv()

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

# Bundled list files, overridable through settings
stopwords_path = Path(settings.STOPWORDS_PATH) if settings.STOPWORDS_PATH else DATA_DIR / "stopwords_en.txt"
abbreviations_path = Path(settings.ABBREVIATIONS_PATH) if settings.ABBREVIATIONS_PATH else DATA_DIR / "abbreviations.txt"
blocked_types_path = Path(settings.BLOCKED_TYPES_PATH) if settings.BLOCKED_TYPES_PATH else DATA_DIR / "blocked_semantic_types.txt"

# Shared stemmer for term items and optional ROUGE stemming
stemmer = PorterStemmer()
