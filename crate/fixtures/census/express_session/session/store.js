var EventEmitter = require('events').EventEmitter;

function Store() {
  EventEmitter.call(this);
}

Store.prototype.regenerate = function(req, fn) {
  var self = this;
  this.destroy(req.sessionID, function(err) {
    self.generate(req);
    fn(err);
  });
};

module.exports = Store;
