var Store = require('./session/store');
var Cookie = require('./session/cookie');
var Session = require('./session/session');
var MemoryStore = require('./session/memory');

exports.Store = Store;
exports.Cookie = Cookie;
exports.Session = Session;
exports.MemoryStore = MemoryStore;
