var Store = require('./store');

function MemoryStore() {
  Store.call(this);
  this.sessions = Object.create(null);
}

MemoryStore.prototype.get = function(sessionId, callback) {
  callback(null, this.sessions[sessionId]);
};

MemoryStore.prototype.set = function(sessionId, session, callback) {
  this.sessions[sessionId] = JSON.stringify(session);
  callback && callback();
};

module.exports = MemoryStore;
