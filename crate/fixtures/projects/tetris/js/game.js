define(['board', 'pieces', 'lodash'], function(Board, pieces, _) {
  function Game() {
    this.board = new Board(10, 20);
  }

  Game.prototype.describe = function() {
    return this.board.size() + ' ' + _.join(pieces.names, ',') + ' ' + Board.EMPTY;
  };

  return Game;
});
