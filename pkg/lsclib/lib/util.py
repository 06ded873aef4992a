import json
import logging
logger = logging.getLogger(__name__)
import concurrent.futures

from lsclib.lib import config

json_dump = lambda x: json.dumps(x, sort_keys=True, indent=4)
json_print = lambda x: print(json_dump(x))
jsonl_line = lambda x: json.dumps(x, sort_keys=True, ensure_ascii=False)

def chunkify(l, n):
    n = max(1, n)
    return [l[i:i + n] for i in range(0, len(l), n)]

def parallel_map(fn, items, workers=None, chunk_size=None):
    """Apply `fn` to every item on a thread pool; results come back in input order."""
    items = list(items)
    workers = workers or config.WORKERS
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]

    chunk_size = chunk_size or max(1, len(items) // (workers * 4))
    indexed = chunkify(list(enumerate(items)), chunk_size)
    results = [None] * len(items)

    def run_chunk(chunk):
        for index, item in chunk:
            results[index] = fn(item)

    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(run_chunk, chunk) for chunk in indexed]
        for future in futures:
            future.result()
    return results

def write_jsonl(records, path=None, stream=None):
    lines = [jsonl_line(record) for record in records]
    if path:
        with open(path, 'w', encoding='utf-8') as f:
            for line in lines:
                f.write(line + '\n')
        logger.debug('Wrote {} records to `{}`.'.format(len(lines), path))
    elif stream is not None:
        for line in lines:
            stream.write(line + '\n')
    return lines

def write_json(document, path=None, stream=None):
    text = json_dump(document)
    if path:
        with open(path, 'w', encoding='utf-8') as f:
            f.write(text + '\n')
    elif stream is not None:
        stream.write(text + '\n')
    return text

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
