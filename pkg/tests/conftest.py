import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from logictree import load_catalog, load_taxonomy

# Hand-authored constituency fixtures for the two running examples. The first
# statement uses the temporal connective "After" so the left half carries a
# temporal relation alongside the causal "therefore"/"cause" pair; the second
# is the two-sentence analogy-over-condition statement.
FIG1A_TREE = (
    "(ROOT (S (S (SBAR (IN After) (S (NP (NP (DT the) (NN number)) (PP (IN of)"
    " (NP (NNS vaccinations)))) (VP (VBD increased)))) (, ,) (S (NP (NP (DT the)"
    " (NNS cases)) (PP (IN of) (NP (NN flu)))) (VP (VBP have) (VP (VBN risen)))))"
    " (, ,) (RB therefore) (S (NP (DT the) (NNS vaccinations)) (VP (VBP cause)"
    " (NP (NP (DT an) (NN increase)) (PP (IN in) (NP (NN flu) (NNS cases))))))"
    " (. .)))"
)
FIG1A_TEXT = (
    "After the number of vaccinations increased, the cases of flu have risen, "
    "therefore the vaccinations cause an increase in flu cases."
)

FIG1B_TREES = [
    "(ROOT (S (SBAR (IN If) (S (NP (PRP you)) (VP (VBD loved) (NP (PRP me)))))"
    " (, ,) (NP (PRP you)) (VP (MD 'd) (ADVP (RB never)) (VP (VB criticize)"
    " (NP (PRP me)))) (. .)))",
    "(ROOT (S (ADVP (RB Likewise)) (, ,) (S (VP (VBG loving) (NP (NP (PRP one)"
    " (POS 's)) (NN country)))) (VP (VBZ means) (S (VP (ADVP (RB never))"
    " (VBG criticizing) (NP (PRP it))))) (. .)))",
]
FIG1B_TEXT = (
    "If you loved me, you'd never criticize me. "
    "Likewise, loving one's country means never criticizing it."
)


@pytest.fixture(scope="session")
def taxonomy():
    return load_taxonomy()


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()
