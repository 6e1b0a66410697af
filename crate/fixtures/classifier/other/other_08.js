'use strict';
var now = Date.now();
