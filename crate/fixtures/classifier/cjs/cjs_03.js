var Emitter = require('events').EventEmitter;
var util = require('util');
function Bus() { Emitter.call(this); }
util.inherits(Bus, Emitter);
module.exports = Bus;
