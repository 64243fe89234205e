# Chat transport modes
MODE_LIVE = "live"
MODE_RECORD = "record"
MODE_REPLAY = "replay"

# Answer methods
METHOD_VN = "vn"
METHOD_TC = "tc"
METHOD_KG = "kg"

# Triplet admission
PARSE_STRICT = "strict"
PARSE_LOOSE = "loose"

# Community summarizers
SUMMARIZER_EXTRACTIVE = "extractive"
SUMMARIZER_LLM = "llm"

# Choices for Click options
MODE_CHOICES = [MODE_LIVE, MODE_RECORD, MODE_REPLAY]
METHOD_CHOICES = [METHOD_VN, METHOD_TC, METHOD_KG]
PARSE_CHOICES = [PARSE_STRICT, PARSE_LOOSE]
SUMMARIZER_CHOICES = [SUMMARIZER_EXTRACTIVE, SUMMARIZER_LLM]

# Defaults
DEFAULT_BATCH_SIZES = "100,200,300,400,500"
DEFAULT_SUMMARIZER = SUMMARIZER_EXTRACTIVE

# Files inside an --index directory
NODE_INDEX_FILE = "node_index.json"
CHUNK_INDEX_FILE = "chunk_index.json"
COMMUNITIES_FILE = "communities.json"

# Other artifact names
MANIFEST_FILE = "manifest.json"
ANSWERS_FILE = "answers.json"
JUDGEMENTS_FILE = "judgements.json"
REPORT_JSON_FILE = "report.json"
REPORT_TEXT_FILE = "report.txt"

# Process exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_TRANSPORT = 3
