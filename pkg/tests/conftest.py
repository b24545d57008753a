import hypothesis
from hypothesis import strategies as st

from wildwords.words import Letter, Word

hypothesis.settings.register_profile("fast", max_examples=25)
hypothesis.settings.register_profile("thorough", max_examples=300)


def letters(max_index: int = 8) -> st.SearchStrategy[Letter]:
    return st.builds(
        Letter,
        index=st.integers(min_value=1, max_value=max_index),
        sign=st.sampled_from((1, -1)),
    )


def words(max_index: int = 8, max_size: int = 40) -> st.SearchStrategy[Word]:
    return st.builds(
        Word, st.lists(letters(max_index), max_size=max_size).map(tuple)
    )
