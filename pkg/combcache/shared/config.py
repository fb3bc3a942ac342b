import os

from envparse import env

# Hard guardrail on how many subsets a single enumeration may materialize.
ENUMERATION_CAP = 10 ** 7


class Config:
    """
    Set configuration vars from the environment / .env file.

    The output directory is the only setting read from the environment,
    everything else comes from flags or a run config file.
    """

    @staticmethod
    def get_output_dir():
        return env('COMBCACHE_OUTPUT_DIR', default=os.path.join(os.getcwd(), '__output'))

    @staticmethod
    def get_default_workers():
        return os.cpu_count() or 1
