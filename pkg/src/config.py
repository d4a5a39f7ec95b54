import os
import json

CONFIG_FILE = 'glvgame_config.json'

INTEGRATOR_DEFAULTS = {
    'method': 'dp54_adaptive',
    'dt_init': 1e-3,
    'rel_tol': 1e-10,
    'abs_tol': 1e-10,
    'sample_dt': 0.01,
    'max_steps': 10_000_000,
}

def _read_config_file():
    """
    Reads the optional glvgame_config.json file from the working directory.
    """
    # Assuming the command is run from the root of the project
    config_path = os.path.join(os.getcwd(), CONFIG_FILE)
    if os.path.exists(config_path):
        with open(config_path, 'r') as f:
            return json.load(f)
    return {}

def get_integrator_settings():
    """
    Returns default integrator settings.

    Values from the 'integrator' section of glvgame_config.json take precedence,
    then the GLVGAME_METHOD, GLVGAME_TOL, GLVGAME_SAMPLE_DT and GLVGAME_MAX_STEPS
    environment variables, then the built-in defaults.
    """
    settings = dict(INTEGRATOR_DEFAULTS)
    if os.getenv('GLVGAME_METHOD'):
        settings['method'] = os.getenv('GLVGAME_METHOD')
    if os.getenv('GLVGAME_TOL'):
        settings['rel_tol'] = settings['abs_tol'] = float(os.getenv('GLVGAME_TOL'))
    if os.getenv('GLVGAME_SAMPLE_DT'):
        settings['sample_dt'] = float(os.getenv('GLVGAME_SAMPLE_DT'))
    if os.getenv('GLVGAME_MAX_STEPS'):
        settings['max_steps'] = int(os.getenv('GLVGAME_MAX_STEPS'))
    settings.update(_read_config_file().get('integrator', {}))
    return settings

def get_seed():
    """
    Reads the seed for all pseudo-randomness (config file, then GLVGAME_SEED, default 0).
    """
    config = _read_config_file()
    if 'seed' in config:
        return int(config['seed'])
    return int(os.getenv('GLVGAME_SEED', '0'))

def get_log_level():
    return os.getenv('GLVGAME_LOG_LEVEL', 'WARNING').upper()

def colors_enabled():
    # https://no-color.org
    return 'NO_COLOR' not in os.environ
