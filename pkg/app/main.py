import fastapi

from . import __version__
from .battery.controller import router as batteryRouter
from .consumption.controller import router as consumptionRouter
from .logger import init_logger
from .provisioning.controller import router as provisioningRouter
from .scenario.controller import router as presetsRouter
from .settings import get_settings
from .sim.controller import router as simRouter
from .wpt.controller import router as wptRouter

init_logger(get_settings().log_level)

app = fastapi.FastAPI(title="Aerprov", version=__version__)

app.include_router(batteryRouter)
app.include_router(consumptionRouter)
app.include_router(provisioningRouter)
app.include_router(wptRouter)
app.include_router(simRouter)
app.include_router(presetsRouter)


@app.get("/")
def index():
    #Return the api name and version
    return {"name": app.title, "version": app.version}
