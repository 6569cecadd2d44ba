"""Session filtering, feature aggregation, and knowledge-gain labeling."""

import numpy as np

from viscom.queries import QUERY_FEATURE_NAMES, query_features
from viscom.session import (
    FeatureVector,
    aggregate_session,
    compute_kg,
    filter_content_pages,
    label_classes,
)
from viscom.snapshot import KnowledgeTest, NavigationEvent, SessionRecord

session = SessionRecord(
    user_id="learner-1",
    events=(
        NavigationEvent(timestamp=0.0, url="https://g/search?q=lightning",
                        page_type="serp", query="lightning"),
        NavigationEvent(timestamp=40.0, url="https://a.example/page1",
                        page_type="content", snapshot_id="page1"),
        NavigationEvent(timestamp=300.0, url="https://youtube.com/watch?v=1",
                        page_type="video"),
        NavigationEvent(timestamp=500.0, url="https://b.example/page2",
                        page_type="content", snapshot_id="page2"),
    ),
    test=KnowledgeTest(pre_correct=4, post_correct=8, n_items=10),
)

content = filter_content_pages(session)
print("content pages:", [ev.snapshot_id for ev in content])
print("knowledge gain:", compute_kg(session.test))

page1 = FeatureVector(names=("f.a", "f.b"), values=np.asarray([1.0, float("nan")]), scope="page")
page2 = FeatureVector(names=("f.a", "f.b"), values=np.asarray([3.0, 6.0]), scope="page")
queries = FeatureVector(names=tuple(f"query.{n}" for n in QUERY_FEATURE_NAMES),
                        values=query_features(session), scope="session")
aggregated = aggregate_session([page1, page2], queries)
print("\naggregated session vector (missing values ignored per feature):")
for name, value in list(aggregated.as_dict().items())[:6]:
    print(f"  {name:40} {value}")

kgs = [0.55, 0.1, -0.2, 0.3, 0.2, 0.25, -0.05, 0.0, 0.6, 0.15]
print("\nlabels for a small cohort:")
for label in label_classes(kgs):
    print(f"  kg {label.kg:+.2f}  z {label.z:+.2f}  {label.cls}")
