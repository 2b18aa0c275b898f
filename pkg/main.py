import logging

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from core.config import settings
from core.exceptions import TwistAlgError
from routers import catalog, classify, curve, twist

logging.basicConfig(level=settings.log_level, format='%(levelname)s: %(asctime)s - %(name)s - %(message)s')
logger = logging.getLogger(__name__)

app = FastAPI(title="twistalg")

# Configure CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["GET", "POST", "PUT", "DELETE", "OPTIONS"],
    allow_headers=["*"],
)

app.include_router(catalog.router)
app.include_router(twist.router)
app.include_router(classify.router)
app.include_router(curve.router)


@app.exception_handler(TwistAlgError)
async def twistalg_error_handler(request: Request, exc: TwistAlgError):
    # Same body as HTTPException(status_code=422, detail=exc.to_payload())
    logger.error(f"{request.url.path}: {exc.code}: {exc.detail}")
    return JSONResponse(status_code=422, content={"detail": exc.to_payload()})


@app.get("/")
def read_root():
    return {"message": "twistalg service is running!"}

# Run the server with: uvicorn main:app --reload
