import math
from collections import Counter
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple
from api.models.models import FrequentItemset, SupportFraction, TransactionSet
from api.models.run_config import MinerConfig, RationalInput, parse_rational
from config.logging_config import logger
from middleware.error_handler import MiningError
from utils.number_format import display_support

Itemset = Tuple[str, ...]


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


class MinerService:
    """Frequent itemset mining over a document's transactions (Apriori, no rule generation)."""

    @staticmethod
    def _normalize(itemset: Iterable[str]) -> Itemset:
        items = tuple(sorted(set(itemset)))
        if not items:
            raise MiningError("support is undefined for an empty itemset")
        return items

    @staticmethod
    def support(itemset: Iterable[str], ts: TransactionSet) -> SupportFraction:
        """Number of transactions whose items include every item of `itemset`, over the total."""
        items = MinerService._normalize(itemset)
        count = sum(1 for t in ts.transactions if t.items.issuperset(items))
        return SupportFraction(count=count, total=ts.total)

    @staticmethod
    def is_frequent(itemset: Iterable[str], ts: TransactionSet, min_sup: RationalInput) -> bool:
        return MinerService.support(itemset, ts).meets(parse_rational(min_sup))

    @staticmethod
    def min_support_count(min_sup: RationalInput, total: int) -> int:
        """Smallest covered-transaction count that reaches `min_sup` (exact ceiling)."""
        return math.ceil(parse_rational(min_sup) * total)

    @staticmethod
    def apriori(ts: TransactionSet, config: MinerConfig) -> List[FrequentItemset]:
        """
        All itemsets whose support reaches config.min_sup, with exact supports.

        Level-wise: frequent 1-itemsets first, then size-k candidates joined
        from frequent (k-1)-itemsets sharing a (k-2)-prefix and pruned when a
        (k-1)-subset is infrequent. Stops at an empty level or at
        config.max_itemset_size. Support is counted by intersecting per-item
        transaction bitmasks.

        Returns the itemsets sorted by descending support, then items.
        """
        total = ts.total
        min_count = MinerService.min_support_count(config.min_sup, total)
        logger.info(
            f"Mining {total} transactions at min_sup {config.min_sup}: "
            f"an itemset must cover at least {min_count} transactions"
        )

        # Vertical layout: item -> bitmask of the transactions containing it
        tidsets: Dict[str, int] = {}
        for transaction in ts.transactions:
            bit = 1 << transaction.index
            for item in transaction.items:
                tidsets[item] = tidsets.get(item, 0) | bit

        level: Dict[Itemset, int] = {
            (item,): mask for item, mask in sorted(tidsets.items())
            if _popcount(mask) >= min_count
        }
        frequent: Dict[Itemset, int] = dict(level)
        size = 1

        while level and (config.max_itemset_size is None or size < config.max_itemset_size):
            size += 1
            next_level: Dict[Itemset, int] = {}
            for candidate in MinerService._generate_candidates(sorted(level)):
                mask = level[candidate[:-1]] & tidsets[candidate[-1]]
                if _popcount(mask) >= min_count:
                    next_level[candidate] = mask
            logger.debug(f"Level {size}: {len(next_level)} frequent itemsets")
            frequent.update(next_level)
            level = next_level

        itemsets = [
            FrequentItemset(items=items, support=SupportFraction(count=_popcount(mask), total=total))
            for items, mask in frequent.items()
        ]
        itemsets.sort(key=FrequentItemset.sort_key)
        logger.info(f"Found {len(itemsets)} frequent itemsets {MinerService.count_by_size(itemsets)}")
        return itemsets

    @staticmethod
    def _generate_candidates(previous: Sequence[Itemset]) -> List[Itemset]:
        """Join sorted (k-1)-itemsets on a shared (k-2)-prefix, then prune on (k-1)-subsets."""
        known = set(previous)
        candidates = []
        for i, first in enumerate(previous):
            for second in previous[i + 1:]:
                # sorted input keeps a prefix group contiguous
                if first[:-1] != second[:-1]:
                    break
                candidate = first + (second[-1],)
                if all(subset in known for subset in combinations(candidate, len(candidate) - 1)):
                    candidates.append(candidate)
        return candidates

    @staticmethod
    def filter_by_threshold(itemsets: Iterable[FrequentItemset], min_sup: RationalInput) -> List[FrequentItemset]:
        """Itemsets still frequent at a higher `min_sup`; equal to mining again at that threshold."""
        threshold = parse_rational(min_sup)
        return [fi for fi in itemsets if fi.support.meets(threshold)]

    @staticmethod
    def count_by_size(itemsets: Iterable[FrequentItemset]) -> Dict[int, int]:
        return dict(sorted(Counter(fi.size for fi in itemsets).items()))

    @staticmethod
    def to_dicts(itemsets: Iterable[FrequentItemset], ts: Optional[TransactionSet] = None) -> List[Dict[str, Any]]:
        """Dump rows sorted by descending support then items; `support` is display-only."""
        names = ts.item_names if ts is not None else {}
        rows = []
        for fi in sorted(itemsets, key=FrequentItemset.sort_key):
            rows.append({
                "items": list(fi.items),
                "names": [names.get(item, item) for item in fi.items],
                "count": fi.support.count,
                "total": fi.support.total,
                "support": display_support(fi.support.value)
            })
        return rows

    @staticmethod
    def from_dicts(rows: Iterable[Dict[str, Any]]) -> List[FrequentItemset]:
        """Rebuild itemsets from a dump; supports come back exact from count/total."""
        return [
            FrequentItemset(
                items=tuple(row["items"]),
                support=SupportFraction(count=int(row["count"]), total=int(row["total"]))
            )
            for row in rows
        ]
