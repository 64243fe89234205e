import time
from typing import Any, Dict, Optional

import requests

from src.errors import TransportError
from src.logger import get_logger

logger = get_logger()

USER_AGENT = "KEO-KG-RAG"


def _is_retry_safe(status_code: int) -> bool:
    return status_code == 429 or status_code >= 500


def _post_once(
    url: str, payload: Dict[str, Any], headers: Dict[str, str], timeout: float
) -> Dict[str, Any]:
    try:
        response = requests.post(url, headers=headers, json=payload, timeout=timeout)
    except (requests.exceptions.ConnectionError, requests.exceptions.Timeout) as e:
        raise TransportError(f"Network error calling {url}: {e}", retry_safe=True)
    except requests.exceptions.RequestException as e:
        raise TransportError(f"Request to {url} failed: {e}")

    logger.debug(f"Response status code from {url}: {response.status_code}")
    if response.status_code != 200:
        raise TransportError(
            f"Request to {url} failed with status code {response.status_code}: "
            f"{response.text[:500]}",
            retry_safe=_is_retry_safe(response.status_code),
            status_code=response.status_code,
        )

    try:
        return response.json()
    except ValueError:
        raise TransportError(
            f"Response from {url} is not valid JSON",
            status_code=response.status_code,
            details={"body": response.text[:500]},
        )


def post_json(
    url: str,
    payload: Dict[str, Any],
    api_key: Optional[str] = None,
    timeout: float = 120.0,
    max_retries: int = 2,
    retry_backoff: float = 1.0,
) -> Dict[str, Any]:
    """
    POST a JSON payload and return the decoded JSON body.

    Connection errors, timeouts, 429 and 5xx responses are retried up to
    ``max_retries`` times with exponential backoff; everything else raises at once.

    Raises:
        TransportError: When the request cannot be completed
    """
    headers = {
        "Content-Type": "application/json",
        "Accept": "application/json",
        "User-Agent": USER_AGENT,
    }
    if api_key:
        headers["Authorization"] = f"Bearer {api_key}"

    attempt = 0
    while True:
        try:
            return _post_once(url, payload, headers, timeout)
        except TransportError as e:
            if not e.retry_safe or attempt >= max_retries:
                logger.error(str(e))
                raise
            delay = retry_backoff * (2**attempt)
            attempt += 1
            logger.warning(f"{e}; retrying ({attempt}/{max_retries}) in {delay:.1f}s")
            if delay > 0:
                time.sleep(delay)
