"""
Fractional country counts with EU-27 and UK rows
================================================

Each paper's I3 contribution is split across the countries in its
address list. Aggregate rows are plain sums of their members.
"""

from pathlib import Path

from i3kit import GroupingConfig, assign_all, country_table, make_corpus
from i3kit.report import table_markdown
from i3kit.synthetic import random_corpus

config = GroupingConfig.from_json((Path(__file__).parent / "eu_uk_config.json").read_bytes())
corpus = make_corpus(random_corpus(3000, n_journals=12, n_countries=24, seed=42))
scored = assign_all(corpus, config)

# about 11% of the synthetic records carry no address
print(f"address coverage: {float(corpus.report.address_coverage):.2%}")

table = country_table(corpus, scored, config)
print(table_markdown(table.rows, table.accounted, title="Countries with at least 1% of I3"))

###############################################################################
# Marks compare each row with what its share of publications predicts.
# "~" means the expected value is below five and the test is skipped.
