"""
Configuration settings for the segmented sieve and its cache file.
"""

sieve_settings = {
    # Odd numbers per segment; a multiple of 8 so segments bit-pack cleanly.
    # 2**18 bytes of mask keeps a segment inside L2.
    "SEGMENT_ODD_COUNT": 1 << 18,
    "MEMORY_BUDGET_BYTES": 4 * 1024 ** 3,
    "WORKERS": 1,
}

cache_format = {
    "MAGIC": b"PSUM1",
    "HEADER": "<QQ",
    "CHECKSUM": "sha256",
    "CACHE_DIR_ENV": "PRIMESUMS_CACHE_DIR",
    "SUFFIX": ".psum",
}
