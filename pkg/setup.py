from setuptools import setup

setup(
    packages=[
        "concat_reach_core",
        "concat_reach_core.certificates",
        "concat_reach_core.witnesses",
    ],
)
