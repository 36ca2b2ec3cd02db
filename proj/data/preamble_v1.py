# cwm-verify candidate preamble, version 1.
# Prepended to candidate source before loading.
import copy
import random
from copy import deepcopy
from typing import *
from typing import Any, Dict, List, Optional, Tuple
from collections import defaultdict, Counter
