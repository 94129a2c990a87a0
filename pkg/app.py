# uvicorn entry point for the cantor API server
from api import app
from settings import log_level, server_address

if __name__ == "__main__":
    import uvicorn

    host, port = server_address()
    uvicorn.run(app, host=host, port=port, log_level=log_level().lower())
