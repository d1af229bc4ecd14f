# # Seeded search on the open strengthenings

import json

from divisorlab.explore import ExplorationConfig, explore, replay

config = ExplorationConfig(question="Q1", max_order=12, trials=200, seed=42)
report = explore(config)
print(json.dumps(report.summary(), indent=2)[:400])

# Each record keeps the instance document, so any trial can be re-run alone.

record = report.records[17]
print(record["instance"]["group"], record["count"], record["weak_bound"], record["strong_bound"])
print(replay("Q1", record))

# Same seed, same bytes.

print(report.dumps() == explore(config).dumps())

for q in ("Q2", "Q3", "Q4"):
    r = explore(ExplorationConfig(question=q, max_order=8, trials=50, seed=7))
    print(q, r.summary()["statement"])
