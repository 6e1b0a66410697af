'use strict';
const path = require("path");
function resolve(p) { return path.resolve(p); }
module.exports = { resolve };
