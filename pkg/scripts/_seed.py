"""Small self-contained demo corpus and conversation script shared by the
runnable scripts. The follow-up turns are deliberately context-dependent so
the rewriting stage has visible work to do."""

from __future__ import annotations

from convsearch.index import Passage

SEED_PASSAGES = [
    Passage("L1", "The climate in Lucca is mild with warm summers and cool winters. "
                  "Rain falls in autumn more than elsewhere in Tuscany."),
    Passage("L2", "The origins of Lucca date back to the Etruscans. Lucca later became "
                  "a Roman colony and kept its ancient street plan."),
    Passage("L3", "Monuments you should visit in Lucca include the Renaissance walls, "
                  "the Guinigi Tower, and the cathedral of San Martino."),
    Passage("D1", "The origins of Rome are tied to legend. Romulus is said to have "
                  "founded the city."),
    Passage("D2", "The origins of jazz lie in New Orleans. Brass bands shaped the "
                  "early sound."),
    Passage("D3", "The origins of stars are studied by astronomers. Clouds of gas "
                  "collapse under gravity."),
    Passage("D4", "You should visit famous monuments of Rome. The Colosseum draws "
                  "millions of visitors."),
    Passage("D5", "Monuments of Egypt include the pyramids. You should visit them at "
                  "dawn."),
    Passage("D6", "The climate in Norway is cold. Winters bring heavy snow to the "
                  "fjords."),
    Passage("D7", "The Mediterranean climate brings dry summers. Many coastal towns "
                  "share this pattern."),
]

SEED_SCRIPT = [
    "How is the climate in Lucca?",
    "Tell me about its origins.",
    "What monuments should I visit?",
]

SEED_QRELS = {
    "demo_1": {"L1": 4},
    "demo_2": {"L2": 4},
    "demo_3": {"L3": 4},
}
