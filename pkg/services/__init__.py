# Description: This file initializes the services package.
from services.document_service import DocumentService
from services.annotation_service import AnnotationService
from services.transaction_service import TransactionService
from services.miner_service import MinerService
from services.summarizer_service import SummarizerService
from services.rouge_service import RougeService
from services.experiment_service import ExperimentService

__all__ = [
    'DocumentService',
    'AnnotationService',
    'TransactionService',
    'MinerService',
    'SummarizerService',
    'RougeService',
    'ExperimentService'
]
